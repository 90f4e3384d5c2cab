//! JSON and CSV serialization of generator and operator matrices.
//!
//! JSON is `{label, rows, cols, dtype, entries}` with row-major `entries`.
//! Real matrices (`dtype = "real"`) hold plain numbers; complex ones hold
//! `[re, im]` pairs. An operator whose entries are all real is written as real.

use serde::Serialize;

use crate::clifford::{OperatorLabel, OperatorMatrix};
use crate::error::{Error, Result};
use crate::phase_space::{Generator6, GeneratorLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::UnknownTag(format!("export format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Entries {
    Real(Vec<Vec<f64>>),
    Complex(Vec<Vec<[f64; 2]>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixExport {
    pub label: String,
    pub rows: usize,
    pub cols: usize,
    pub dtype: &'static str,
    pub entries: Entries,
}

impl MatrixExport {
    pub fn from_generator(g: &Generator6) -> Self {
        let entries = (0..6).map(|r| (0..6).map(|c| g.entries[(r, c)]).collect()).collect();
        Self {
            label: g.label.to_string(),
            rows: 6,
            cols: 6,
            dtype: "real",
            entries: Entries::Real(entries),
        }
    }

    pub fn from_operator(op: &OperatorMatrix) -> Self {
        let e = &op.entries;
        let real = e.iter().all(|z| z.im == 0.0);
        let entries = if real {
            Entries::Real((0..8).map(|r| (0..8).map(|c| e[(r, c)].re).collect()).collect())
        } else {
            Entries::Complex((0..8).map(|r| (0..8).map(|c| [e[(r, c)].re, e[(r, c)].im]).collect()).collect())
        };
        Self {
            label: op.label.to_string(),
            rows: 8,
            cols: 8,
            dtype: if real { "real" } else { "complex" },
            entries,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Header row `c0,c1,…` for real matrices and `re0,im0,re1,im1,…` for complex ones.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.entries {
            Entries::Real(rows) => {
                w.write_record((0..self.cols).map(|c| format!("c{c}")))?;
                for row in rows {
                    w.write_record(row.iter().map(f64::to_string))?;
                }
            }
            Entries::Complex(rows) => {
                w.write_record((0..self.cols).flat_map(|c| [format!("re{c}"), format!("im{c}")]))?;
                for row in rows {
                    w.write_record(row.iter().flat_map(|[re, im]| [re.to_string(), im.to_string()]))?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn render(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Json => self.to_json(),
            ExportFormat::Csv => self.to_csv(),
        }
    }
}

/// Builds the matrix named by a generator label (`F1`, `R`, `G(1,5)`, `H2`, …)
/// or an operator label (`A1`, `B`, `B3`, `C(tau=s2)`, `gamma5`, `s1#s1#s0`, …).
pub fn export_label(label: &str) -> Result<MatrixExport> {
    if let Ok(g) = label.parse::<GeneratorLabel>() {
        return Ok(MatrixExport::from_generator(&Generator6::from_label(&g)?));
    }
    let op: OperatorLabel = label
        .parse()
        .map_err(|_| Error::UnknownTag(format!("no generator or operator named `{label}`")))?;
    Ok(MatrixExport::from_operator(&OperatorMatrix::from_label(&op)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_c;
    use crate::clifford::Pauli;

    #[test]
    fn a1_is_a_zero_one_matrix() {
        let e = export_label("A1").unwrap();
        assert_eq!((e.rows, e.cols, e.dtype), (8, 8, "real"));
        let Entries::Real(rows) = &e.entries else { panic!("real expected") };
        assert!(rows.iter().flatten().all(|v| *v == 0.0 || *v == 1.0));
        assert_eq!(rows.iter().flatten().filter(|v| **v == 1.0).count(), 8);
        // diag(α1, α1) with α1 = [[0, σ1], [σ1, 0]].
        assert_eq!(rows[0][3], 1.0);
        assert_eq!(rows[1][2], 1.0);
        assert_eq!(rows[4][7], 1.0);
        let json: serde_json::Value = serde_json::from_str(&e.to_json().unwrap()).unwrap();
        assert_eq!(json["label"], "A1");
        assert_eq!(json["entries"][0][3], 1.0);
    }

    #[test]
    fn generator_labels() {
        let e = export_label("G(1,5)").unwrap();
        assert_eq!(e.label, "G(1,5)");
        let Entries::Real(rows) = &e.entries else { panic!() };
        assert_eq!((rows[0][4], rows[4][0]), (1.0, -1.0));
        assert_eq!(export_label("F8").unwrap().label, "F8");
        assert_eq!(export_label("R").unwrap().rows, 6);
        assert!(matches!(export_label("F9"), Err(Error::UnknownTag(_))));
        assert!(export_label("nope").is_err());
    }

    #[test]
    fn complex_operators() {
        // C = −iσ2⊗σ2⊗σ2 is real; A2 is not.
        assert_eq!(MatrixExport::from_operator(&build_c(Pauli::S2)).dtype, "real");
        assert_eq!(export_label("C(tau=s2)").unwrap().label, "C(tau=s2)");
        let e = export_label("A2").unwrap();
        assert_eq!(e.dtype, "complex");
        let csv = e.to_csv().unwrap();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("re0,im0,re1,im1"));
        assert_eq!(lines.count(), 8);
        let json: serde_json::Value = serde_json::from_str(&e.to_json().unwrap()).unwrap();
        assert_eq!(json["entries"][0].as_array().unwrap().len(), 8);
        assert_eq!(json["entries"][0][0].as_array().unwrap().len(), 2);
    }

    #[test]
    fn csv_real() {
        let csv = export_label("gamma5").unwrap().render(ExportFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "c0,c1,c2,c3,c4,c5,c6,c7");
        assert_eq!(lines.len(), 9);
        assert!("CSV".parse::<ExportFormat>().is_ok());
        assert!("xml".parse::<ExportFormat>().is_err());
    }
}
