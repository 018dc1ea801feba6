//! The map `j` from limits of Cauchy sequences to generalized stability
//! conditions `(K, σ̄)` with `σ̄` a stability condition on `D/K`.

use alloc::format;
use alloc::vec::Vec;

use super::stabilized::{limiting_support, Analysis, LimitingSupport};
use super::{equivalent, AffineSequence};
use crate::model::{CategoryModel, Charge, DgObject, HeartRef, ModelId, Quotient, Shifted, ThickSubcategory};
use crate::norm::{quotient_form, QuadraticForm};
use crate::stability::{support_constant, StabilityCondition};
use crate::{Error, Result};

/// Charges of `K` below this count as killed by `Z_∞`.
const KILL_TOL: f64 = 1e-9;
/// Quotient charges closer than this are equal.
const IMAGE_TOL: f64 = 1e-12;

/// `(K, σ̄)`; `quotient` is absent when `K = D`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedStability {
    pub source: ModelId,
    pub kernel: ThickSubcategory,
    pub quotient: Option<StabilityCondition>,
}

impl GeneralizedStability {
    /// Componentwise equality with a charge tolerance.
    pub fn same_as(&self, other: &GeneralizedStability) -> bool {
        if self.source != other.source || self.kernel != other.kernel {
            return false;
        }
        match (&self.quotient, &other.quotient) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.model == b.model && a.heart == b.heart && a.charge.max_abs_diff(&b.charge) <= IMAGE_TOL
            }
            _ => false,
        }
    }
}

/// The limiting heart `A = P_∞((0, 1])` and its image in the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientHeart {
    pub kernel: ThickSubcategory,
    /// Shifted indecomposables of `A` within the shift window.
    pub members: Vec<Shifted>,
    /// Triangles of `A` checked for the Serre property of `A ∩ K`.
    pub serre_checked: usize,
    /// Heart of `D/K` in its catalog.
    pub heart: HeartRef,
}

fn heart_members(an: &Analysis<'_>) -> Result<Vec<Shifted>> {
    let mut members = Vec::new();
    for x in an.model.indecs() {
        let hn = an.stabilized_hn(&DgObject::single(Shifted::new(x, 0)))?;
        let (hi, lo) = (hn.max_limit_phase(), hn.min_limit_phase());
        // The only shift that can bring the top phase into (0, 1].
        let m = libm::floor(1.0 - hi) as i32;
        if lo + m as f64 > 0.0 && hi + m as f64 <= 1.0 {
            members.push(Shifted::new(x, m));
        }
    }
    members.sort();
    Ok(members)
}

fn serre_check(model: &CategoryModel, members: &[Shifted], kernel: ThickSubcategory) -> Result<usize> {
    let in_a = |x: Shifted| members.binary_search(&x).is_ok();
    let in_k = |x: Shifted| kernel.contains_indec(x.indec);
    let mut checked = 0;
    for t in model.rotated_triangles() {
        let shifts = members.iter().filter(|x| x.indec == t[0].indec).map(|x| x.shift - t[0].shift);
        for m in shifts {
            let [a, b, c] = t.map(|x| x.shifted(m));
            if !(in_a(a) && in_a(b) && in_a(c)) {
                continue;
            }
            checked += 1;
            let name = || format!("{} -> {} -> {}", model.shifted_name(a), model.shifted_name(b), model.shifted_name(c));
            if in_k(b) && !(in_k(a) && in_k(c)) {
                return Err(Error::SerreViolation(format!("not closed under subobjects and quotients: {}", name())));
            }
            if in_k(a) && in_k(c) && !in_k(b) {
                return Err(Error::SerreViolation(format!("not closed under extensions: {}", name())));
            }
        }
    }
    Ok(checked)
}

/// Catalog heart of the quotient whose window-zero copy has exactly the
/// images of `A` outside `K`.
fn locate_quotient_heart(q: &Quotient, members: &[Shifted]) -> Result<HeartRef> {
    let qm = &q.model;
    let mut images: Vec<Shifted> = members.iter().filter_map(|&x| q.image(x)).collect();
    images.sort();
    images.dedup();
    if qm.rank() == 0 {
        return Ok(HeartRef::standard(0));
    }
    for h in 0..qm.hearts().len() {
        let t0 = qm.hearts()[h].simples()[0];
        let shifts = images.iter().filter(|x| x.indec == t0.indec).map(|x| t0.shift - x.shift);
        for k in shifts {
            let r = HeartRef::new(h, k);
            let simples_in = qm.simples(r).iter().all(|t| images.binary_search(&t.shifted(-k)).is_ok());
            let all_in_heart = images.iter().all(|&x| match qm.placement(h, x.shifted(k)) {
                crate::Placement::Simple { degree, .. } => degree == 0,
                crate::Placement::Extension { sub, quot } => sub.1 == 0 && quot.1 == 0,
            });
            if simples_in && all_in_heart {
                return Ok(r);
            }
        }
    }
    let names: Vec<_> = images.iter().map(|&x| qm.shifted_name(x)).collect();
    Err(Error::HeartOutOfCatalog(names.join(",")))
}

/// `A = P_∞((0,1])`, the Serre check for `A ∩ K` and the induced heart of
/// `D/K`.
pub fn quotient_heart(model: &CategoryModel, seq: &AffineSequence) -> Result<QuotientHeart> {
    let an = Analysis::new(model, seq)?;
    let kernel = an.massless_subcategory()?;
    let members = heart_members(&an)?;
    let serre_checked = serre_check(model, &members, kernel)?;
    let q = model.quotient(kernel)?;
    let heart = locate_quotient_heart(&q, &members)?;
    Ok(QuotientHeart { kernel, members, serre_checked, heart })
}

/// `j` applied to a sequence, with the constants checked on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct JImage {
    pub image: GeneralizedStability,
    pub limiting_support: LimitingSupport,
    /// Support constant of `σ̄` for the quotient norm; `+∞` on the zero model.
    pub quotient_support: f64,
    pub serre_checked: usize,
}

/// `j(σ) = (K_σ, (Z̄_∞, Ā))`. The quotient condition is validated and its
/// support constant must be at least the limiting support constant.
pub fn j_map(model: &CategoryModel, seq: &AffineSequence, form: &QuadraticForm) -> Result<JImage> {
    let ls = limiting_support(model, seq, form)?;
    if !ls.holds {
        return Err(Error::NoLimitingSupport);
    }
    let qh = quotient_heart(model, seq)?;
    let q = model.quotient(qh.kernel)?;
    let a = seq.a();
    for x in qh.kernel.members() {
        let z = a.eval(&model.class_of_indec(x));
        if z.norm() > KILL_TOL {
            return Err(Error::ChargeDoesNotKill(format!("{} (charge {}{:+}i)", model.symbol(x), z.re, z.im)));
        }
    }
    let image = if q.model.rank() == 0 {
        GeneralizedStability { source: model.id(), kernel: qh.kernel, quotient: None }
    } else {
        let zbar = Charge(q.basis_lifts(model).iter().map(|c| a.eval(c)).collect());
        for x in model.indecs() {
            let c = model.class_of_indec(x);
            if (zbar.eval(&q.project(&c)) - a.eval(&c)).norm() > KILL_TOL {
                return Err(Error::ChargeDoesNotKill(model.thick_label(qh.kernel)));
            }
        }
        let sigma = StabilityCondition::new(q.model.id(), zbar, qh.heart);
        sigma
            .validate(&q.model)
            .map_err(|e| Error::QuotientInvalid(format!("{e}")))?;
        GeneralizedStability { source: model.id(), kernel: qh.kernel, quotient: Some(sigma) }
    };
    let quotient_support = match &image.quotient {
        None => f64::INFINITY,
        Some(sigma) => support_constant(&q.model, sigma, &quotient_form(model, &q, form)?)?,
    };
    if quotient_support < ls.c - 1e-9 {
        return Err(Error::QuotientInvalid(format!(
            "quotient support constant {quotient_support} is below the limiting constant {}",
            ls.c
        )));
    }
    Ok(JImage { image, limiting_support: ls, quotient_support, serre_checked: qh.serre_checked })
}

/// Pairs where equivalence and equality of `j`-images disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub first: usize,
    pub second: usize,
    pub equivalent: bool,
    pub same_image: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InjectivityReport {
    /// Equivalence classes as lists of input indices.
    pub classes: Vec<Vec<usize>>,
    pub images: Vec<GeneralizedStability>,
    pub counterexamples: Vec<Counterexample>,
}

/// Checks `equivalent ⟺ equal j-image` over every pair. Sequences on
/// different models are never equivalent.
pub fn injectivity_probe(items: &[(&CategoryModel, &AffineSequence, &QuadraticForm)]) -> Result<InjectivityReport> {
    let images: Vec<GeneralizedStability> = items
        .iter()
        .map(|(m, s, f)| j_map(m, s, f).map(|j| j.image))
        .collect::<Result<_>>()?;
    let n = items.len();
    let mut class_of: Vec<Option<usize>> = alloc::vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut counterexamples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (mi, si, _) = items[i];
            let (mj, sj, _) = items[j];
            let eq = mi.id() == mj.id() && equivalent(mi, si, sj)?;
            let same = images[i].same_as(&images[j]);
            if eq != same {
                counterexamples.push(Counterexample { first: i, second: j, equivalent: eq, same_image: same });
            }
            if eq && class_of[j].is_none() {
                let c = *class_of[i].get_or_insert_with(|| {
                    classes.push(alloc::vec![i]);
                    classes.len() - 1
                });
                class_of[j] = Some(c);
                classes[c].push(j);
            }
        }
        if class_of[i].is_none() {
            classes.push(alloc::vec![i]);
            class_of[i] = Some(classes.len() - 1);
        }
    }
    Ok(InjectivityReport { classes, images, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Indec;
    use core::f64::consts::PI;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn remark_j_image_is_independent_of_z() {
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        let form = QuadraticForm::euclidean(2);
        let seq = |z| {
            AffineSequence::new(&m, HeartRef::standard(0), Charge(alloc::vec![c(0.0, 0.0), c(-1.0, 0.0)]), Charge(alloc::vec![z, c(0.0, 0.0)]), None)
                .unwrap()
        };
        let j1 = j_map(&m, &seq(c(0.0, 1.0)), &form).unwrap();
        let j2 = j_map(&m, &seq(Complex64::from_polar(1.0, PI / 3.0)), &form).unwrap();
        assert!(j1.image.same_as(&j2.image));
        assert_eq!(j1.image.kernel, m.thick_from_indecs([Indec(0)]));
        let q = j1.image.quotient.unwrap();
        assert_eq!(q.model, ModelId::A1Path);
        assert_eq!(q.charge, Charge(alloc::vec![c(-1.0, 0.0)]));
        assert_eq!(q.heart, HeartRef::standard(0));
        assert!(j1.serre_checked > 0);
    }

    #[test]
    fn rank_one_j_images() {
        let m = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let form = QuadraticForm::euclidean(1);
        let collapse =
            AffineSequence::new(&m, HeartRef::standard(0), Charge(alloc::vec![c(0.0, 0.0)]), Charge(alloc::vec![c(-1.0, 0.0)]), None).unwrap();
        let j = j_map(&m, &collapse, &form).unwrap();
        assert_eq!(j.image.kernel, m.whole());
        assert!(j.image.quotient.is_none());
        let interior =
            AffineSequence::new(&m, HeartRef::standard(0), Charge(alloc::vec![c(-1.0, 0.0)]), Charge(alloc::vec![c(0.0, 0.2)]), None).unwrap();
        let j = j_map(&m, &interior, &form).unwrap();
        assert!(j.image.kernel.is_zero());
        let q = j.image.quotient.unwrap();
        assert_eq!(q.charge, Charge(alloc::vec![c(-1.0, 0.0)]));
        assert_eq!(q.heart, HeartRef::standard(0));
    }

    #[test]
    fn probe_separates_distinct_limits() {
        let m = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let form = QuadraticForm::euclidean(1);
        let mk = |a: f64, k| {
            AffineSequence::new(&m, HeartRef::standard(k), Charge(alloc::vec![c(a, 0.0)]), Charge(alloc::vec![c(-1.0, 0.0)]), None).unwrap()
        };
        let seqs = [mk(0.0, 0), mk(0.0, 2), mk(-1.0, 0), mk(-2.0, 0)];
        let items: Vec<_> = seqs.iter().map(|s| (&m, s, &form)).collect();
        let r = injectivity_probe(&items).unwrap();
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.classes, alloc::vec![alloc::vec![0, 1], alloc::vec![2], alloc::vec![3]]);
    }

    #[test]
    fn widely_spread_heart_has_a_quotient_heart() {
        // `S1[8]|S2` in window −1 puts `S1` nine shifts below the window.
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        let form = QuadraticForm::euclidean(2);
        let h = HeartRef::new(m.heart_index("S1[8]|S2").unwrap(), -1);
        let s = AffineSequence::new(&m, h, Charge(alloc::vec![c(0.0, -1.0), c(0.0, 0.0)]), Charge(alloc::vec![c(0.0, 0.0), c(0.0, -1.0)]), None)
            .unwrap();
        let qh = quotient_heart(&m, &s).unwrap();
        assert!(qh.members.contains(&Shifted::new(Indec(0), 9)));
        let j = j_map(&m, &s, &form).unwrap();
        assert_eq!(j.image.kernel, m.thick_from_indecs([Indec(1)]));
        assert!(j.image.quotient.is_some());
    }
}
