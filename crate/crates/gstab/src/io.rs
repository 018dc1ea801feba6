//! JSON forms of models, objects, stability conditions, sequences and
//! `j`-images, plus the fixed-precision number formatting used by reports.

use std::io;

use gstab_core::completion::{AffineSequence, CauchySequence, GeneralizedStability};
use gstab_core::{CategoryModel, Charge, Complex64, DgObject, HeartRef, ModelId, StabilityCondition};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use crate::error::InputError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeartDto {
    pub id: String,
    pub shift: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub charge: Vec<[f64; 2]>,
    pub heart: HeartDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceDto {
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        model: Option<String>,
        explicit: Vec<ConditionDto>,
    },
    Affine {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        model: Option<String>,
        heart: HeartDto,
        #[serde(rename = "A")]
        a: Vec<[f64; 2]>,
        #[serde(rename = "B")]
        b: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n0: Option<u64>,
    },
}

impl SequenceDto {
    pub fn model(&self) -> Option<&str> {
        match self {
            SequenceDto::Explicit { model, .. } | SequenceDto::Affine { model, .. } => model.as_deref(),
        }
    }
}

/// `[["symbol", shift], …]`
pub type ObjectDto = Vec<(String, i32)>;

pub fn charge_from(v: &[[f64; 2]]) -> Charge {
    Charge(v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

pub fn heart_from(model: &CategoryModel, h: &HeartDto) -> Result<HeartRef, InputError> {
    let idx = model.heart_index(&h.id).map_err(|e| InputError::Reference(e.to_string()))?;
    Ok(HeartRef::new(idx, h.shift))
}

pub fn condition_from(model: &CategoryModel, c: &ConditionDto) -> Result<StabilityCondition, InputError> {
    if let Some(m) = &c.model {
        let id = ModelId::parse(m).map_err(|e| InputError::Parse(e.to_string()))?;
        if id != model.id() {
            return Err(InputError::Reference(format!("condition model {id} differs from {}", model.id())));
        }
    }
    if c.charge.len() != model.rank() {
        return Err(InputError::Parse(format!(
            "charge has {} entries, model {} has rank {}",
            c.charge.len(),
            model.id(),
            model.rank()
        )));
    }
    Ok(StabilityCondition::new(model.id(), charge_from(&c.charge), heart_from(model, &c.heart)?))
}

/// Builds a sequence; an affine path that never becomes valid is reported
/// as a core error, not an input error.
pub fn sequence_from(
    model: &CategoryModel,
    s: &SequenceDto,
) -> Result<Result<CauchySequence, gstab_core::Error>, InputError> {
    match s {
        SequenceDto::Explicit { explicit, .. } => {
            let terms = explicit.iter().map(|c| condition_from(model, c)).collect::<Result<Vec<_>, _>>()?;
            Ok(Ok(CauchySequence::Explicit(terms)))
        }
        SequenceDto::Affine { heart, a, b, n0, .. } => {
            for v in [a, b] {
                if v.len() != model.rank() {
                    return Err(InputError::Parse(format!(
                        "sequence coefficient has {} entries, model {} has rank {}",
                        v.len(),
                        model.id(),
                        model.rank()
                    )));
                }
            }
            let heart = heart_from(model, heart)?;
            Ok(AffineSequence::new(model, heart, charge_from(a), charge_from(b), *n0).map(CauchySequence::Affine))
        }
    }
}

pub fn object_from(model: &CategoryModel, o: &ObjectDto) -> Result<DgObject, InputError> {
    let parts: Vec<(&str, i32)> = o.iter().map(|(s, k)| (s.as_str(), *k)).collect();
    model.object(&parts).map_err(|e| InputError::Reference(e.to_string()))
}

/// A finite float, or a string for `±∞` and NaN, which JSON cannot carry.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("+inf")
    } else {
        json!("-inf")
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn charge_json(c: &Charge) -> Value {
    Value::Array(c.0.iter().map(|&z| complex_json(z)).collect())
}

pub fn heart_json(model: &CategoryModel, h: HeartRef) -> Value {
    json!({ "id": model.heart_id(h.heart), "shift": h.shift })
}

pub fn object_json(model: &CategoryModel, obj: &DgObject) -> Value {
    Value::Array(obj.summands().iter().map(|s| json!([model.symbol(s.indec), s.shift])).collect())
}

pub fn condition_json(model: &CategoryModel, s: &StabilityCondition) -> Value {
    json!({ "charge": charge_json(&s.charge), "heart": heart_json(model, s.heart) })
}

pub fn sequence_json(model: &CategoryModel, s: &AffineSequence) -> Value {
    json!({
        "model": s.model().to_string(),
        "heart": heart_json(model, s.heart()),
        "A": charge_json(s.a()),
        "B": charge_json(s.b()),
        "n0": s.n0(),
    })
}

pub fn thick_json(model: &CategoryModel, k: gstab_core::ThickSubcategory) -> Value {
    Value::Array(k.members().map(|x| json!(model.symbol(x))).collect())
}

pub fn j_image_json(model: &CategoryModel, g: &GeneralizedStability) -> Value {
    let quotient = match &g.quotient {
        None => json!("zero"),
        Some(s) => {
            let q = CategoryModel::load(s.model).expect("quotient models load");
            json!({
                "model": s.model.to_string(),
                "charge": charge_json(&s.charge),
                "heart": heart_json(&q, s.heart),
            })
        }
    };
    json!({ "K": thick_json(model, g.kernel), "quotient": quotient })
}

/// Seventeen significant digits; positional for exponents in `[-5, 16]`,
/// scientific otherwise.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent marker") + 1..].parse().expect("integer exponent");
    if (-5..=15).contains(&exp) {
        format!("{x:.prec$}", prec = (16 - exp) as usize)
    } else {
        sci
    }
}

/// Pretty JSON whose floats always carry seventeen significant digits, so
/// reports are byte-stable.
struct Fixed17<'a>(PrettyFormatter<'a>);

impl Formatter for Fixed17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Fixed17(PrettyFormatter::new()));
    v.serialize(&mut ser).expect("serializing a Value into memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_string(&json!({"x": 0.5, "y": [num(f64::INFINITY), 2]}));
        assert!(s.contains("0.50000000000000000"), "{s}");
        assert_eq!(fmt_f64(std::f64::consts::LN_2), "0.69314718055994529");
        assert_eq!(fmt_f64(1e-7), "9.9999999999999995e-8");
        assert!(s.contains("\"+inf\""));
        assert!(s.contains(" 2\n") || s.contains("2\n"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"], json!(0.5));
    }

    #[test]
    fn parses_both_sequence_forms() {
        let a: SequenceDto = serde_json::from_str(
            r#"{"heart": {"id": "std", "shift": 0}, "A": [[0,0],[-1,0]], "B": [[0,1],[0,0]], "n0": 1}"#,
        )
        .unwrap();
        assert!(matches!(a, SequenceDto::Affine { n0: Some(1), .. }));
        let e: SequenceDto = serde_json::from_str(
            r#"{"explicit": [{"charge": [[-1,0]], "heart": {"id": "S", "shift": 0}}]}"#,
        )
        .unwrap();
        assert!(matches!(e, SequenceDto::Explicit { .. }));
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        assert!(matches!(sequence_from(&m, &a), Ok(Ok(CauchySequence::Affine(_)))));
        let o: ObjectDto = serde_json::from_str(r#"[["E", 0], ["S1", 2]]"#).unwrap();
        assert_eq!(object_from(&m, &o).unwrap(), m.object(&[("E", 0), ("S1", 2)]).unwrap());
        assert!(object_from(&m, &vec![("X".to_string(), 0)]).is_err());
    }
}
