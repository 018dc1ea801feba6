//! Equivalence of Cauchy sequences: `d̃(σ_n, τ_n) → 0`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::stabilized::Analysis;
use super::AffineSequence;
use crate::geometry::{cover_distance, in_dirichlet_domain, CoverPoint};
use crate::model::{CategoryModel, DgObject, ModelId, Shifted};
use crate::{Error, Result, PHASE_TIE_TOL, ZERO_CHARGE_TOL};

/// Limit charges closer than this are equal.
const CHARGE_TOL: f64 = 1e-12;

fn check_models(model: &CategoryModel, s: &AffineSequence, t: &AffineSequence) -> Result<()> {
    for q in [s, t] {
        if q.model() != model.id() {
            return Err(Error::ModelMismatch { expected: model.id(), found: q.model() });
        }
    }
    Ok(())
}

/// Limit point on the cover of a rank-one sequence with nonzero limit.
fn limit_cover_point(model: &CategoryModel, s: &AffineSequence) -> CoverPoint {
    let h = s.heart();
    let k = h.shift + model.simples(h)[0].shift;
    let alpha = s.a().0[0];
    let phi = crate::phase::closure_phase(alpha, h.shift);
    let frac = phi - h.shift as f64;
    let m = (k - 1) as i64;
    CoverPoint::new(alpha.norm(), PI * (m.rem_euclid(2) as f64 + frac)).deck(m.div_euclid(2))
}

/// Non-massless part of the limit HN filtration of every indecomposable:
/// limit phases with the summed limit charges at each phase.
fn signature(an: &Analysis<'_>) -> Result<Vec<Vec<(f64, Complex64)>>> {
    let mut out = Vec::new();
    for x in an.model.indecs() {
        let hn = an.stabilized_hn(&DgObject::single(Shifted::new(x, 0)))?;
        let mut sig: Vec<(f64, Complex64)> = Vec::new();
        for f in hn.factors.iter().filter(|f| !f.is_massless()) {
            match sig.last_mut() {
                Some((p, z)) if (*p - f.limit_phase).abs() <= PHASE_TIE_TOL => *z += f.limit_charge,
                _ => sig.push((f.limit_phase, f.limit_charge)),
            }
        }
        out.push(sig);
    }
    Ok(out)
}

/// Whether two affine sequences converge to the same point of the metric
/// completion.
///
/// Rank-one models compare limit points on the cover; a collapsing limit is
/// the single boundary point. Other models require equal limit charges,
/// equal massless subcategories and equal limit HN data on every
/// non-massless factor.
pub fn equivalent(model: &CategoryModel, s: &AffineSequence, t: &AffineSequence) -> Result<bool> {
    check_models(model, s, t)?;
    if s.a().max_abs_diff(t.a()) > CHARGE_TOL {
        return Ok(false);
    }
    match model.id() {
        ModelId::Zero => Ok(true),
        ModelId::A1Cyn(_) | ModelId::A1Path => {
            if s.a().0[0].norm() <= ZERO_CHARGE_TOL {
                return Ok(true);
            }
            let (p, q) = (limit_cover_point(model, s), limit_cover_point(model, t));
            Ok(cover_distance(&p, &q) <= CHARGE_TOL * (1.0 + p.r()))
        }
        ModelId::A2Path => {
            let (a, b) = (Analysis::new(model, s)?, Analysis::new(model, t)?);
            if a.massless_subcategory()? != b.massless_subcategory()? {
                return Ok(false);
            }
            let (sa, sb) = (signature(&a)?, signature(&b)?);
            Ok(sa.iter().zip(&sb).all(|(x, y)| {
                x.len() == y.len()
                    && x.iter().zip(y).all(|((p, z), (q, w))| {
                        (p - q).abs() <= PHASE_TIE_TOL && (z - w).norm() <= CHARGE_TOL * (1.0 + z.norm())
                    })
            }))
        }
    }
}

/// Outcome of the search for a chain of shared Dirichlet tiles.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongEquivalence {
    pub holds: bool,
    /// Centres of the tiles, one per link of the chain.
    pub chain: Vec<CoverPoint>,
}

/// Index at which tails are sampled for tile containment.
const TAIL_INDEX: u64 = 1_000_000;

fn tail_point(model: &CategoryModel, s: &AffineSequence) -> Result<CoverPoint> {
    let n = s.n0().max(TAIL_INDEX);
    CoverPoint::of_stability(model, &s.evaluate(n)?)
}

/// Angle on the cover of the constant-argument tail of a collapsing
/// sequence.
fn collapse_theta(model: &CategoryModel, s: &AffineSequence) -> f64 {
    let h = s.heart();
    debug_assert_eq!(model.simples(h)[0].shift, 0);
    let beta = s.b().0[0];
    let phi = crate::phase::lift_phase(beta, h.shift).unwrap_or(h.shift as f64 + 1.0);
    PI * (phi - 1.0)
}

/// Chain of sequences linking `s` to `t`, consecutive ones sharing a
/// Dirichlet tile. Rank-one models only.
pub fn strongly_equivalent(model: &CategoryModel, s: &AffineSequence, t: &AffineSequence) -> Result<StrongEquivalence> {
    check_models(model, s, t)?;
    match model.id() {
        ModelId::A1Cyn(_) | ModelId::A1Path => {}
        other => return Err(Error::UnsupportedForModel { op: "strong equivalence", model: other }),
    }
    if !equivalent(model, s, t)? {
        return Ok(StrongEquivalence { holds: false, chain: vec![] });
    }
    let (ps, pt) = (tail_point(model, s)?, tail_point(model, t)?);
    if s.a().0[0].norm() > ZERO_CHARGE_TOL {
        let centre = limit_cover_point(model, s);
        let holds = in_dirichlet_domain(&centre, &ps) && in_dirichlet_domain(&centre, &pt);
        return Ok(StrongEquivalence { holds, chain: vec![centre] });
    }
    // Collapsing tails: intermediate collapsing sequences at angles stepping
    // by at most π/2, each consecutive pair inside the tile centred between.
    let (t0, t1) = (collapse_theta(model, s), collapse_theta(model, t));
    let steps = libm::ceil((t1 - t0).abs() / (PI / 2.0)).max(1.0) as usize;
    let angle = |i: usize| t0 + (t1 - t0) * i as f64 / steps as f64;
    let r = ps.r().max(pt.r());
    let mut chain = Vec::with_capacity(steps);
    let mut holds = true;
    for i in 0..steps {
        let (a, b) = (angle(i), angle(i + 1));
        let centre = CoverPoint::new(1.0, 0.5 * (a + b));
        let (ya, yb) = (CoverPoint::new(r, a), CoverPoint::new(r, b));
        holds &= in_dirichlet_domain(&centre, &ya) && in_dirichlet_domain(&centre, &yb);
        chain.push(centre);
    }
    holds &= (ps.theta() - t0).abs() < 1e-9 * (1.0 + t0.abs()) && (pt.theta() - t1).abs() < 1e-9 * (1.0 + t1.abs());
    Ok(StrongEquivalence { holds, chain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Charge, HeartRef};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn a1_seq(m: &CategoryModel, a: Complex64, b: Complex64, k: i32) -> AffineSequence {
        AffineSequence::new(m, HeartRef::standard(k), Charge(vec![a]), Charge(vec![b]), None).unwrap()
    }

    #[test]
    fn rank_one_examples() {
        let m = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s0 = a1_seq(&m, c(0.0, 0.0), c(-1.0, 0.0), 0);
        let s1 = a1_seq(&m, c(0.0, 0.0), c(-1.0, 0.0), 2);
        assert!(equivalent(&m, &s0, &s1).unwrap());
        let i1 = a1_seq(&m, c(-1.0, 0.0), c(0.0, 0.5), 0);
        let i2 = a1_seq(&m, c(-2.0, 0.0), c(0.0, 0.5), 0);
        assert!(!equivalent(&m, &i1, &i2).unwrap());
        // Same limit charge, different sheets.
        let i3 = a1_seq(&m, c(-1.0, 0.0), c(0.0, 0.5), 2);
        assert!(!equivalent(&m, &i1, &i3).unwrap());
        let i4 = a1_seq(&m, c(-1.0, 0.0), c(0.0, 0.1), 0);
        assert!(equivalent(&m, &i1, &i4).unwrap());
    }

    #[test]
    fn remark_pair_is_equivalent() {
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        let seq = |z| {
            AffineSequence::new(&m, HeartRef::standard(0), Charge(vec![c(0.0, 0.0), c(-1.0, 0.0)]), Charge(vec![z, c(0.0, 0.0)]), None)
                .unwrap()
        };
        let (s, t) = (seq(c(0.0, 1.0)), seq(Complex64::from_polar(1.0, PI / 3.0)));
        assert!(equivalent(&m, &s, &t).unwrap());
        let u = AffineSequence::new(&m, HeartRef::standard(0), Charge(vec![c(0.0, 0.0), c(-2.0, 0.0)]), Charge(vec![c(0.0, 1.0), c(0.0, 0.0)]), None)
            .unwrap();
        assert!(!equivalent(&m, &s, &u).unwrap());
        assert!(matches!(strongly_equivalent(&m, &s, &t), Err(Error::UnsupportedForModel { .. })));
    }

    #[test]
    fn strong_equivalence_chains() {
        let m = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s0 = a1_seq(&m, c(0.0, 0.0), c(-1.0, 0.0), 0);
        let s0b = a1_seq(&m, c(0.0, 0.0), c(-3.0, 0.0), 0);
        let r = strongly_equivalent(&m, &s0, &s0b).unwrap();
        assert!(r.holds);
        assert_eq!(r.chain.len(), 1);
        let s1 = a1_seq(&m, c(0.0, 0.0), c(-1.0, 0.0), 2);
        let r = strongly_equivalent(&m, &s0, &s1).unwrap();
        assert!(r.holds);
        assert_eq!(r.chain.len(), 4);
        let i1 = a1_seq(&m, c(-1.0, 0.0), c(0.0, 0.5), 0);
        let r = strongly_equivalent(&m, &i1, &a1_seq(&m, c(-1.0, 0.0), c(0.0, 0.1), 0)).unwrap();
        assert!(r.holds && r.chain.len() == 1);
    }
}
