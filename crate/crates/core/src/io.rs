//! File formats and number formatting.
//!
//! Frame files: `{"field": "real"|"complex", "n": 2, "vectors": [[1, 0], ...]}`
//! with complex entries written as `[re, im]`. Poset files:
//! `{"ground": 3, "members": [[], [1, 2], [1, 3]]}` with 1-based sorted members.
//! All floating-point output uses 17 significant digits.

use std::io;

use serde::{Deserialize, Serialize};

use crate::dual::DualElement;
use crate::error::{FrameError, Result};
use crate::frame::{Field, Frame};
use crate::linalg::{Matrix, C64};
use crate::poset::{FactorPoset, IndexSet};

/// `printf("%.17g")`.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` for complex fields, plain `%.17g` for real ones.
pub fn fmt_scalar(z: C64, field: Field) -> String {
    match field {
        Field::Real => fmt_g17(z.re),
        Field::Complex => {
            let im = fmt_g17(z.im.abs());
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            format!("{}{sign}{im}i", fmt_g17(z.re))
        }
    }
}

pub fn fmt_vector(v: &[C64], field: Field) -> String {
    let parts: Vec<String> = v.iter().map(|&z| fmt_scalar(z, field)).collect();
    format!("({})", parts.join(", "))
}

/// JSON formatter writing every float with 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with 17-digit floats and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// One scalar as stored in files: a bare number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn new(z: C64, field: Field) -> Self {
        match field {
            Field::Real => Scalar::Real(z.re),
            Field::Complex => Scalar::Complex([z.re, z.im]),
        }
    }

    pub fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

pub fn scalars(v: &[C64], field: Field) -> Vec<Scalar> {
    v.iter().map(|&z| Scalar::new(z, field)).collect()
}

pub fn matrix_rows(m: &Matrix, field: Field) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| scalars(&m.row(r), field)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub field: Field,
    pub n: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl From<&Frame> for FrameFile {
    fn from(f: &Frame) -> Self {
        FrameFile { field: f.field(), n: f.dim(), vectors: f.vectors().iter().map(|v| scalars(v, f.field())).collect() }
    }
}

impl FrameFile {
    pub fn into_frame(self) -> Result<Frame> {
        let vectors = self.vectors.into_iter().map(|v| v.into_iter().map(Scalar::value).collect()).collect();
        Frame::new(self.field, self.n, vectors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub ground: usize,
    pub members: Vec<Vec<usize>>,
}

impl From<&FactorPoset> for PosetFile {
    fn from(p: &FactorPoset) -> Self {
        PosetFile { ground: p.ground(), members: p.members().iter().map(|m| m.to_one_based()).collect() }
    }
}

impl PosetFile {
    pub fn into_poset(self) -> Result<FactorPoset> {
        let mut sets = Vec::with_capacity(self.members.len());
        for m in &self.members {
            let s = IndexSet::from_one_based(m)?;
            if s.len() != m.len() {
                return Err(FrameError::Parse(format!("member {m:?} repeats an index")));
            }
            sets.push(s);
        }
        FactorPoset::from_members(self.ground, sets)
    }
}

pub fn sets_one_based(sets: &[IndexSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.to_one_based()).collect()
}

/// Either kind of input document.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Frame(Frame),
    Poset(FactorPoset),
}

pub fn parse_frame(text: &str) -> Result<Frame> {
    let file: FrameFile = serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))?;
    file.into_frame()
}

pub fn parse_poset(text: &str) -> Result<FactorPoset> {
    let file: PosetFile = serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))?;
    file.into_poset()
}

/// Parses a frame file or a poset file, told apart by their keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))?;
    if value.get("vectors").is_some() {
        parse_frame(text).map(Document::Frame)
    } else if value.get("members").is_some() {
        parse_poset(text).map(Document::Poset)
    } else {
        Err(FrameError::Parse("expected a frame file (\"vectors\") or a poset file (\"members\")".into()))
    }
}

pub fn frame_to_json(frame: &Frame) -> String {
    to_json(&FrameFile::from(frame))
}

pub fn poset_to_json(poset: &FactorPoset) -> String {
    to_json(&PosetFile::from(poset))
}

/// Export of one dual: primal fingerprint, kernel basis, coefficients and
/// dual vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualExport {
    pub fingerprint: String,
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub coefficients: Vec<Vec<Scalar>>,
    pub columns: Vec<Vec<Scalar>>,
    pub duality_residual: f64,
}

impl From<&DualElement> for DualExport {
    fn from(d: &DualElement) -> Self {
        let fam = d.family();
        let field = fam.field();
        DualExport {
            fingerprint: fam.frame().fingerprint(),
            field,
            n: fam.frame().dim(),
            k: fam.frame().len(),
            kernel_basis: fam.kernel_basis().iter().map(|u| scalars(u, field)).collect(),
            coefficients: matrix_rows(d.coeffs(), field),
            columns: d.materialized().columns().iter().map(|c| scalars(c, field)).collect(),
            duality_residual: d.duality_residual(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        assert_eq!(fmt_g17(0.1), "0.10000000000000001");
        assert_eq!(fmt_g17(1.0), "1");
        assert_eq!(fmt_g17(0.5), "0.5");
        assert_eq!(fmt_g17(-2.25), "-2.25");
        assert_eq!(fmt_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(fmt_g17(1e20), "1e+20");
        assert_eq!(fmt_g17(123456789.0), "123456789");
        assert_eq!(fmt_g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(fmt_g17(0.0001), "0.0001");
        assert_eq!(fmt_g17(1e16), "10000000000000000");
        assert_eq!(fmt_g17(1e17), "1e+17");
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, 6.02e23, -7.5e-9] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn scalar_rendering() {
        assert_eq!(fmt_scalar(C64::new(1.0, -0.5), Field::Complex), "1-0.5i");
        assert_eq!(fmt_scalar(C64::new(0.0, 2.0), Field::Complex), "0+2i");
        assert_eq!(fmt_scalar(C64::new(0.25, 0.0), Field::Real), "0.25");
    }

    #[test]
    fn frame_round_trip() {
        let f = Frame::complex(
            2,
            vec![vec![C64::new(0.1, 0.2), C64::new(1.0 / 3.0, 0.0)], vec![C64::new(0.0, 1.0), C64::new(2.0, -1.0)]],
        )
        .unwrap();
        let text = frame_to_json(&f);
        assert!(text.contains("[0.10000000000000001,0.20000000000000001]"));
        assert_eq!(parse_frame(&text).unwrap(), f);
        let r = Frame::real(2, vec![vec![1.0, 0.0], vec![0.1, -3.0]]).unwrap();
        assert_eq!(frame_to_json(&r), "{\"field\":\"real\",\"n\":2,\"vectors\":[[1,0],[0.10000000000000001,-3]]}\n");
        assert_eq!(parse_document(&frame_to_json(&r)).unwrap(), Document::Frame(r));
    }

    #[test]
    fn poset_round_trip() {
        let text = "{\"ground\": 3, \"members\": [[], [1, 3], [1, 2]]}";
        let p = parse_poset(text).unwrap();
        assert_eq!(poset_to_json(&p), "{\"ground\":3,\"members\":[[],[1,2],[1,3]]}\n");
        assert!(matches!(parse_document(text).unwrap(), Document::Poset(_)));
        assert!(parse_poset("{\"ground\": 3, \"members\": [[0]]}").is_err());
        assert!(parse_poset("{\"ground\": 3, \"members\": [[1, 1]]}").is_err());
        assert!(parse_document("{\"x\": 1}").is_err());
        assert!(parse_frame("{\"field\": \"real\", \"n\": 2, \"vectors\": [[1, 2, 3]]}").is_err());
    }
}
