//! Cauchy sequences of stability conditions and their limits.
//!
//! Sequences are symbolic: `σ_n = (A + B/n, heart)` for `n ≥ n₀`. Every
//! limit quantity (stabilized HN filtrations, massless objects, limiting
//! phases, the quotient stability condition) is decided from `A` and `B`
//! without sampling.

mod equivalence;
mod jmap;
mod stabilized;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::model::{CategoryModel, Charge, HeartRef, ModelId};
use crate::phase::in_half_plane;
use crate::stability::StabilityCondition;
use crate::{Error, Result};

pub use equivalence::{equivalent, strongly_equivalent, StrongEquivalence};
pub use jmap::{
    injectivity_probe, j_map, quotient_heart, GeneralizedStability, InjectivityReport, JImage,
    QuotientHeart,
};
pub use stabilized::{
    limit_mass, limiting_phase, limiting_support, massless_subcategory, stabilized_hn,
    LimitingSupport, StabilizedFactor, StabilizedHn,
};

/// `σ_n = (A + B/n, heart)` for `n ≥ n₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSequence {
    model: ModelId,
    heart: HeartRef,
    a: Charge,
    b: Charge,
    n0: u64,
}

impl AffineSequence {
    /// Computes the first index `n₀` from which every term is valid, or
    /// checks a supplied one.
    pub fn new(model: &CategoryModel, heart: HeartRef, a: Charge, b: Charge, n0: Option<u64>) -> Result<Self> {
        for c in [&a, &b] {
            if c.rank() != model.rank() {
                return Err(Error::RankMismatch { expected: model.rank(), found: c.rank() });
            }
        }
        if heart.heart >= model.hearts().len() {
            return Err(Error::UnknownHeart(alloc::format!("#{}", heart.heart)));
        }
        let mut seq = AffineSequence { model: model.id(), heart, a, b, n0: 1 };
        let first = seq.first_valid_index(model)?;
        match n0 {
            Some(n) if n < first => return Err(Error::BeforeStart { n, n0: first }),
            Some(n) => seq.n0 = n,
            None => seq.n0 = first,
        }
        Ok(seq)
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn heart(&self) -> HeartRef {
        self.heart
    }

    /// The limit charge `Z_∞`.
    pub fn a(&self) -> &Charge {
        &self.a
    }

    pub fn b(&self) -> &Charge {
        &self.b
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn charge_at(&self, n: u64) -> Charge {
        self.a.affine(&self.b, 1.0 / n as f64)
    }

    pub fn evaluate(&self, n: u64) -> Result<StabilityCondition> {
        if n < self.n0 {
            return Err(Error::BeforeStart { n, n0: self.n0 });
        }
        Ok(StabilityCondition::new(self.model, self.charge_at(n), self.heart))
    }

    fn valid_at(&self, model: &CategoryModel, n: u64) -> bool {
        let z = self.charge_at(n);
        model
            .simples(self.heart)
            .iter()
            .all(|&t| in_half_plane(z.eval(&model.class_of_shifted(t)), self.heart.shift))
    }

    /// Validity of each simple along `x = 1/n` holds on an interval `(0, x_max]`,
    /// so the tail is valid from the first index inside every interval.
    fn first_valid_index(&self, model: &CategoryModel) -> Result<u64> {
        let sign = crate::phase::parity_sign(self.heart.shift);
        let mut x_max = f64::INFINITY;
        for &t in model.simples(self.heart) {
            let c = model.class_of_shifted(t);
            let (a, b) = (self.a.eval(&c) * sign, self.b.eval(&c) * sign);
            x_max = x_max.min(valid_until(a, b).ok_or(Error::NeverValid)?);
        }
        let mut n = if x_max.is_infinite() || x_max >= 1.0 {
            1
        } else {
            let g = libm::floor(1.0 / x_max);
            if g > 9.0e15 {
                return Err(Error::NeverValid);
            }
            (g as u64).saturating_sub(1).max(1)
        };
        // Step back over rounding, then forward to the first valid index.
        while n > 1 && self.valid_at(model, n - 1) {
            n -= 1;
        }
        let mut steps = 0;
        while !self.valid_at(model, n) {
            n += 1;
            steps += 1;
            if steps > 64 {
                return Err(Error::NeverValid);
            }
        }
        Ok(n)
    }
}

/// Supremum of `x > 0` such that `a + b·x` is in `ℍ` on `(0, x]`; `None` if
/// no such interval exists.
fn valid_until(a: Complex64, b: Complex64) -> Option<f64> {
    if a.im > 0.0 {
        return Some(if b.im >= 0.0 { f64::INFINITY } else { -a.im / b.im });
    }
    if a.im < 0.0 {
        return None;
    }
    if b.im > 0.0 {
        return Some(f64::INFINITY);
    }
    if b.im < 0.0 {
        return None;
    }
    // Moving along the real axis.
    if a.re < 0.0 {
        Some(if b.re <= 0.0 { f64::INFINITY } else { -a.re / b.re })
    } else if a.re == 0.0 && b.re < 0.0 {
        Some(f64::INFINITY)
    } else {
        None
    }
}

/// A Cauchy sequence in symbolic affine form, or an explicit finite list of
/// terms standing for a periodic tail.
#[derive(Debug, Clone, PartialEq)]
pub enum CauchySequence {
    Affine(AffineSequence),
    Explicit(Vec<StabilityCondition>),
}

impl CauchySequence {
    pub fn as_affine(&self) -> Result<&AffineSequence> {
        match self {
            CauchySequence::Affine(s) => Ok(s),
            CauchySequence::Explicit(_) => Err(Error::NotAffine),
        }
    }
}

/// Open set certifying π-locality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalityWitness {
    /// Dirichlet tile of the cover centred at a point.
    Tile(crate::geometry::CoverPoint),
    /// Chamber of a catalog heart in charge space.
    Chamber(HeartRef),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiLocality {
    pub local: bool,
    pub witness: Option<LocalityWitness>,
}

/// A fixed heart pins the tail to one sheet over charge space, which maps
/// homeomorphically. Explicit lists are local iff their second half shares a
/// single heart.
pub fn is_pi_local(model: &CategoryModel, seq: &CauchySequence) -> Result<PiLocality> {
    match seq {
        CauchySequence::Affine(s) => {
            if s.model != model.id() {
                return Err(Error::ModelMismatch { expected: model.id(), found: s.model });
            }
            Ok(PiLocality { local: true, witness: Some(heart_witness(model, s.heart)) })
        }
        CauchySequence::Explicit(terms) => {
            if terms.is_empty() {
                return Err(Error::EmptySequence);
            }
            for t in terms {
                t.validate(model)?;
            }
            let tail = &terms[terms.len() / 2..];
            let h = tail[0].heart;
            let local = tail.iter().all(|t| t.heart == h);
            Ok(PiLocality { local, witness: local.then(|| heart_witness(model, h)) })
        }
    }
}

fn heart_witness(model: &CategoryModel, heart: HeartRef) -> LocalityWitness {
    match model.id() {
        ModelId::A1Cyn(_) | ModelId::A1Path => {
            // Phases (k, k+1] occupy θ ∈ (π(k−1), πk]; centre the tile inside.
            let k = heart.shift + model.simples(heart)[0].shift;
            let theta = core::f64::consts::PI * (k as f64 - 0.5);
            LocalityWitness::Tile(crate::geometry::CoverPoint::new(1.0, theta))
        }
        _ => LocalityWitness::Chamber(heart),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_examples() {
        let a2 = CategoryModel::load(ModelId::A2Path).unwrap();
        let s = AffineSequence::new(
            &a2,
            HeartRef::standard(0),
            Charge(vec![c(0.0, 0.0), c(-1.0, 0.0)]),
            Charge(vec![c(0.0, 1.0), c(0.0, 0.0)]),
            None,
        )
        .unwrap();
        assert_eq!(s.n0(), 1);
        assert_eq!(s.evaluate(2).unwrap().charge, Charge(vec![c(0.0, 0.5), c(-1.0, 0.0)]));
        assert_eq!(s.evaluate(0), Err(Error::BeforeStart { n: 0, n0: 1 }));

        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s = AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(0.0, 0.0)]), Charge(vec![c(-1.0, 0.0)]), None)
            .unwrap();
        assert_eq!(s.evaluate(4).unwrap().charge, Charge(vec![c(-0.25, 0.0)]));
    }

    #[test]
    fn first_valid_index_is_exact() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        // Im(i − 3i/n) > 0 iff n > 3.
        let s = AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(0.0, 1.0)]), Charge(vec![c(0.0, -3.0)]), None)
            .unwrap();
        assert_eq!(s.n0(), 4);
        // At n = 3 the charge is 0.
        assert!(s.evaluate(3).is_err());
        assert!(AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(0.0, 1.0)]), Charge(vec![c(0.0, -3.0)]), Some(2))
            .is_err());
        // −1 + 2/n on the real axis: valid for n ≥ 3.
        let s = AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(-1.0, 0.0)]), Charge(vec![c(2.0, 0.0)]), None)
            .unwrap();
        assert_eq!(s.n0(), 3);
        assert_eq!(
            AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(0.0, -1.0)]), Charge(vec![c(0.0, 5.0)]), None),
            Err(Error::NeverValid)
        );
    }

    #[test]
    fn pi_locality_examples() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s = AffineSequence::new(&a1, HeartRef::standard(0), Charge(vec![c(0.0, 0.0)]), Charge(vec![c(-1.0, 0.0)]), None)
            .unwrap();
        let loc = is_pi_local(&a1, &CauchySequence::Affine(s)).unwrap();
        assert!(loc.local);
        let terms: Vec<StabilityCondition> = (1..=20)
            .map(|n| {
                let k = if n % 2 == 0 { 0 } else { 2 };
                StabilityCondition::new(a1.id(), Charge(vec![c(-1.0 / n as f64, 0.0)]), HeartRef::standard(k))
            })
            .collect();
        assert!(!is_pi_local(&a1, &CauchySequence::Explicit(terms)).unwrap().local);
    }
}
