//! Stability conditions `σ = (Z, heart)` on a model, their HN filtrations,
//! masses and phases, and the metrics built from them.
//!
//! The slicing is never stored: it is derived from the charge, the catalog
//! heart and the phase window `(k, k+1]` of the heart simples.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::model::{CategoryModel, Charge, DgObject, HeartRef, Indec, ModelId, Placement, Shifted};
use crate::norm::QuadraticForm;
use crate::phase::{closure_phase, in_half_plane, lift_phase};
use crate::{Error, Result, PHASE_TIE_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCondition {
    pub model: ModelId,
    pub charge: Charge,
    pub heart: HeartRef,
}

impl StabilityCondition {
    pub fn new(model: ModelId, charge: Charge, heart: HeartRef) -> Self {
        StabilityCondition { model, charge, heart }
    }

    /// The condition whose heart simples have the given charges.
    pub fn from_simple_charges(model: &CategoryModel, heart: HeartRef, values: &[Complex64]) -> Result<Self> {
        let simples = model.simples(heart);
        if values.len() != simples.len() {
            return Err(Error::RankMismatch { expected: simples.len(), found: values.len() });
        }
        // Solve C·z = values for the lattice-basis charge z; C is unimodular.
        let c: Vec<Vec<f64>> = simples.iter().map(|&t| model.class_of_shifted(t).as_f64()).collect();
        let z = match c.len() {
            0 => Vec::new(),
            1 => alloc::vec![values[0] / c[0][0]],
            2 => {
                let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
                alloc::vec![
                    (values[0] * c[1][1] - values[1] * c[0][1]) / det,
                    (values[1] * c[0][0] - values[0] * c[1][0]) / det,
                ]
            }
            n => return Err(Error::RankMismatch { expected: 2, found: n }),
        };
        let sigma = StabilityCondition::new(model.id(), Charge(z), heart);
        sigma.validate(model)?;
        Ok(sigma)
    }

    /// Checks that every heart simple has nonzero charge in the half-plane
    /// of the heart's shift.
    pub fn validate(&self, model: &CategoryModel) -> Result<()> {
        self.slicing(model).map(|_| ())
    }

    /// The derived slicing data, after validation.
    pub fn slicing<'a>(&'a self, model: &'a CategoryModel) -> Result<Slicing<'a>> {
        if self.model != model.id() {
            return Err(Error::ModelMismatch { expected: model.id(), found: self.model });
        }
        if self.charge.rank() != model.rank() {
            return Err(Error::RankMismatch { expected: model.rank(), found: self.charge.rank() });
        }
        if self.heart.heart >= model.hearts().len() {
            return Err(Error::UnknownHeart(alloc::format!("#{}", self.heart.heart)));
        }
        let k = self.heart.shift;
        let mut phases = Vec::new();
        for &t in model.simples(self.heart) {
            let z = self.charge.eval(&model.class_of_shifted(t));
            match lift_phase(z, k) {
                Some(p) => phases.push(p),
                None => {
                    return Err(Error::Violation {
                        simple: model.shifted_name(t),
                        re: z.re,
                        im: z.im,
                        shift: k,
                    })
                }
            }
        }
        Ok(Slicing { model, sigma: self, simple_phases: phases })
    }
}

/// A semistable factor of an HN filtration. Equal-phase pieces are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct HnFactor {
    pub object: DgObject,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HnFiltration {
    /// Strictly decreasing phases.
    pub factors: Vec<HnFactor>,
}

impl HnFiltration {
    pub fn max_phase(&self) -> f64 {
        self.factors[0].phase
    }

    pub fn min_phase(&self) -> f64 {
        self.factors[self.factors.len() - 1].phase
    }

    pub fn is_semistable(&self) -> bool {
        self.factors.len() == 1
    }
}

/// A stable piece of one summand's HN filtration.
#[derive(Debug, Clone, Copy)]
struct Piece {
    obj: Shifted,
    phase: f64,
    z: Complex64,
}

/// Validated view of a stability condition: the phases of its heart simples
/// are computed once.
#[derive(Debug, Clone)]
pub struct Slicing<'a> {
    model: &'a CategoryModel,
    sigma: &'a StabilityCondition,
    simple_phases: Vec<f64>,
}

impl<'a> Slicing<'a> {
    pub fn model(&self) -> &'a CategoryModel {
        self.model
    }

    pub fn sigma(&self) -> &'a StabilityCondition {
        self.sigma
    }

    pub fn simple_phases(&self) -> &[f64] {
        &self.simple_phases
    }

    pub fn z(&self, x: Shifted) -> Complex64 {
        self.sigma.charge.eval(&self.model.class_of_shifted(x))
    }

    pub fn z_object(&self, obj: &DgObject) -> Complex64 {
        self.sigma.charge.eval(&self.model.class_of(obj))
    }

    fn simple_piece(&self, j: usize, degree: i32) -> Piece {
        let obj = self.model.simples(self.sigma.heart)[j].shifted(degree);
        Piece { obj, phase: self.simple_phases[j] + degree as f64, z: self.z(obj) }
    }

    fn pieces(&self, x: Shifted) -> ([Piece; 2], usize) {
        match self.model.placement(self.sigma.heart.heart, x) {
            Placement::Simple { simple, degree } => {
                let p = self.simple_piece(simple, degree);
                ([p, p], 1)
            }
            Placement::Extension { sub, quot } => {
                let (a, b) = (self.simple_piece(sub.0, sub.1), self.simple_piece(quot.0, quot.1));
                if sub.1 > quot.1 || a.phase > b.phase + PHASE_TIE_TOL {
                    return ([a, b], 2);
                }
                let z = self.z(x);
                let k = self.sigma.heart.shift + sub.1;
                let phase = lift_phase(z, k).unwrap_or_else(|| closure_phase(z, k));
                let p = Piece { obj: x, phase, z };
                ([p, p], 1)
            }
        }
    }

    /// Whether the shifted indecomposable is σ-semistable.
    pub fn is_semistable(&self, x: Shifted) -> bool {
        self.pieces(x).1 == 1
    }

    /// Semistable indecomposables in one shift period.
    pub fn semistable_indecs(&self) -> Vec<Indec> {
        self.model
            .indecs()
            .filter(|&x| self.is_semistable(Shifted::new(x, 0)))
            .collect()
    }

    /// Phase of a semistable shifted indecomposable.
    pub fn phase_of(&self, x: Shifted) -> Option<f64> {
        let (p, n) = self.pieces(x);
        (n == 1).then_some(p[0].phase)
    }

    fn all_pieces(&self, obj: &DgObject) -> Result<Vec<Piece>> {
        if obj.is_zero() {
            return Err(Error::ZeroObject);
        }
        self.model.check_object(obj)?;
        let mut out = Vec::with_capacity(2 * obj.summands().len());
        for &s in obj.summands() {
            let (p, n) = self.pieces(s);
            out.extend_from_slice(&p[..n]);
        }
        Ok(out)
    }

    pub fn hn_filtration(&self, obj: &DgObject) -> Result<HnFiltration> {
        let mut pieces = self.all_pieces(obj)?;
        pieces.sort_by(|a, b| b.phase.total_cmp(&a.phase).then(a.obj.cmp(&b.obj)));
        let mut factors: Vec<HnFactor> = Vec::new();
        let mut group: Vec<Shifted> = Vec::new();
        let mut lead = f64::NAN;
        for p in pieces {
            if !group.is_empty() && lead - p.phase > PHASE_TIE_TOL {
                factors.push(HnFactor { object: DgObject::new(core::mem::take(&mut group)), phase: lead });
            }
            if group.is_empty() {
                lead = p.phase;
            }
            group.push(p.obj);
        }
        factors.push(HnFactor { object: DgObject::new(group), phase: lead });
        Ok(HnFiltration { factors })
    }

    /// `m_σ(E) = Σ |Z(F)|` over the HN factors of `E`.
    pub fn mass(&self, obj: &DgObject) -> Result<f64> {
        Ok(self.all_pieces(obj)?.iter().map(|p| p.z.norm()).sum())
    }

    /// `(φ⁺, φ⁻)`.
    pub fn phases(&self, obj: &DgObject) -> Result<(f64, f64)> {
        let pieces = self.all_pieces(obj)?;
        let hi = pieces.iter().map(|p| p.phase).fold(f64::NEG_INFINITY, f64::max);
        let lo = pieces.iter().map(|p| p.phase).fold(f64::INFINITY, f64::min);
        Ok((hi, lo))
    }
}

fn same_model(model: &CategoryModel, a: &StabilityCondition, b: &StabilityCondition) -> Result<()> {
    for s in [a, b] {
        if s.model != model.id() {
            return Err(Error::ModelMismatch { expected: model.id(), found: s.model });
        }
    }
    Ok(())
}

/// `‖U‖_σ = sup |U(E)| / |Z(E)|` over semistable `E`, attained on a
/// semistable indecomposable.
pub fn sigma_norm(model: &CategoryModel, sigma: &StabilityCondition, u: &Charge) -> Result<f64> {
    let sl = sigma.slicing(model)?;
    if u.rank() != model.rank() {
        return Err(Error::RankMismatch { expected: model.rank(), found: u.rank() });
    }
    Ok(sl
        .semistable_indecs()
        .into_iter()
        .map(|x| {
            let c = model.class_of_indec(x);
            u.eval(&c).norm() / sigma.charge.eval(&c).norm()
        })
        .fold(0.0, f64::max))
}

/// `d(P, Q) = sup_E max(|φ⁺_P − φ⁺_Q|, |φ⁻_P − φ⁻_Q|)`, attained on an
/// indecomposable.
pub fn slicing_distance(model: &CategoryModel, a: &StabilityCondition, b: &StabilityCondition) -> Result<f64> {
    same_model(model, a, b)?;
    let (pa, pb) = (a.slicing(model)?, b.slicing(model)?);
    let mut d: f64 = 0.0;
    for x in model.indecs() {
        let obj = DgObject::single(Shifted::new(x, 0));
        let (ha, la) = pa.phases(&obj)?;
        let (hb, lb) = pb.phases(&obj)?;
        d = d.max((ha - hb).abs()).max((la - lb).abs());
    }
    Ok(d)
}

/// Generalized Bridgeland metric: the slicing distance combined with
/// `sup |log m_a(E) / m_b(E)|`.
pub fn bridgeland_distance(model: &CategoryModel, a: &StabilityCondition, b: &StabilityCondition) -> Result<f64> {
    let mut d = slicing_distance(model, a, b)?;
    let (pa, pb) = (a.slicing(model)?, b.slicing(model)?);
    for x in model.indecs() {
        let obj = DgObject::single(Shifted::new(x, 0));
        let (ma, mb) = (pa.mass(&obj)?, pb.mass(&obj)?);
        let r = if ma > 0.0 && mb > 0.0 { libm::log(ma / mb).abs() } else { f64::INFINITY };
        d = d.max(r);
    }
    Ok(d)
}

/// Infimum of `|Z(E)| / ‖E‖` over semistable `E`, attained on a semistable
/// indecomposable. `+∞` on the zero model.
pub fn support_constant(model: &CategoryModel, sigma: &StabilityCondition, form: &QuadraticForm) -> Result<f64> {
    if form.dim() != model.rank() {
        return Err(Error::DegenerateNorm);
    }
    let sl = sigma.slicing(model)?;
    Ok(sl
        .semistable_indecs()
        .into_iter()
        .map(|x| {
            let c = model.class_of_indec(x);
            sigma.charge.eval(&c).norm() / form.norm_class(&c)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Whether `z` lies in the half-plane of shift `k`; re-exported for callers
/// that build charges by hand.
pub fn charge_in_half_plane(z: Complex64, k: i32) -> bool {
    in_half_plane(z, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{HeartRef, ModelId};
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn a2() -> CategoryModel {
        CategoryModel::load(ModelId::A2Path).unwrap()
    }

    fn sigma(z: Vec<Complex64>) -> StabilityCondition {
        let id = if z.len() == 2 { ModelId::A2Path } else { ModelId::A1Cyn(2) };
        StabilityCondition::new(id, Charge(z), HeartRef::standard(0))
    }

    #[test]
    fn validation_examples() {
        let m = a2();
        let s = sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(s.slicing(&m).unwrap().simple_phases(), &[0.5, 1.0]);
        let bad = sigma(vec![c(0.0, -1.0), c(-1.0, 0.0)]);
        match bad.validate(&m) {
            Err(Error::Violation { simple, .. }) => assert_eq!(simple, "S1"),
            other => panic!("{other:?}"),
        }
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        assert!(sigma(vec![c(0.0, 0.0)]).validate(&a1).is_err());
    }

    #[test]
    fn hn_examples() {
        let m = a2();
        let e = m.object(&[("E", 0)]).unwrap();
        let s = sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        let hn = s.slicing(&m).unwrap().hn_filtration(&e).unwrap();
        assert_eq!(hn.factors.len(), 2);
        assert_eq!(hn.factors[0].object, m.object(&[("S2", 0)]).unwrap());
        assert_eq!(hn.factors[0].phase, 1.0);
        assert_eq!(hn.factors[1].object, m.object(&[("S1", 0)]).unwrap());
        assert_eq!(hn.factors[1].phase, 0.5);

        let t = sigma(vec![c(-1.0, 1.0), c(1.0, 1.0)]);
        let hn = t.slicing(&m).unwrap().hn_filtration(&e).unwrap();
        assert_eq!(hn.factors.len(), 1);
        assert_eq!(hn.factors[0].object, e);
        assert!((hn.factors[0].phase - 0.5).abs() < 1e-15);

        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let u = sigma(vec![c(-1.0, 0.5)]);
        let sl = u.slicing(&a1).unwrap();
        let phi = sl.simple_phases()[0];
        let hn = sl.hn_filtration(&a1.object(&[("S", 3)]).unwrap()).unwrap();
        assert_eq!(hn.factors.len(), 1);
        assert!((hn.factors[0].phase - (phi + 3.0)).abs() < 1e-15);
    }

    #[test]
    fn mass_and_phase_examples() {
        let m = a2();
        let e = m.object(&[("E", 0)]).unwrap();
        let s = sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        let sl = s.slicing(&m).unwrap();
        assert_eq!(sl.mass(&e).unwrap(), 2.0);
        assert_eq!(sl.mass(&m.object(&[("E", 0), ("E", 5)]).unwrap()).unwrap(), 4.0);
        assert_eq!(sl.phases(&e).unwrap(), (1.0, 0.5));
        assert_eq!(sl.phases(&e.shifted(1)).unwrap(), (2.0, 1.5));
        let t = sigma(vec![c(-1.0, 1.0), c(1.0, 1.0)]);
        assert!((t.slicing(&m).unwrap().mass(&e).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(sl.mass(&DgObject::zero()), Err(Error::ZeroObject));

        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let u = sigma(vec![c(-1.0, 0.5)]);
        let sl = u.slicing(&a1).unwrap();
        let phi = sl.simple_phases()[0];
        assert_eq!(sl.phases(&a1.object(&[("S", 0), ("S", 2)]).unwrap()).unwrap(), (phi + 2.0, phi));
    }

    #[test]
    fn sigma_norm_examples() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s = sigma(vec![c(-1.0, 0.0)]);
        assert!((sigma_norm(&a1, &s, &Charge(vec![c(0.1, 0.0)])).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(sigma_norm(&a1, &s, &Charge::zero(1)).unwrap(), 0.0);
        let m = a2();
        let t = sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(sigma_norm(&m, &t, &Charge(vec![c(0.0, 1.0), c(0.0, 0.0)])).unwrap(), 1.0);
    }

    #[test]
    fn distance_examples() {
        let m = a2();
        let s = sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(slicing_distance(&m, &s, &s).unwrap(), 0.0);
        assert_eq!(bridgeland_distance(&m, &s, &s).unwrap(), 0.0);
        // Rotating every charge by π and shifting the window moves all phases by one.
        let rot = StabilityCondition::new(ModelId::A2Path, s.charge.scale(c(-1.0, 0.0)), HeartRef::standard(1));
        assert!((slicing_distance(&m, &s, &rot).unwrap() - 1.0).abs() < 1e-15);
        let w = sigma(vec![Complex64::from_polar(1.0, 0.75 * core::f64::consts::PI), c(-1.0, 0.0)]);
        assert!((slicing_distance(&m, &s, &w).unwrap() - 0.25).abs() < 1e-12);
        let w2 = sigma(vec![c(0.0, 2.0), c(-1.0, 0.0)]);
        assert!((bridgeland_distance(&m, &s, &w2).unwrap() - core::f64::consts::LN_2).abs() < 1e-15);

        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let (p, q) = (sigma(vec![c(-1.0, 0.0)]), sigma(vec![c(-2.0, 0.0)]));
        assert!((bridgeland_distance(&a1, &p, &q).unwrap() - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn support_constant_examples() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let e1 = QuadraticForm::euclidean(1);
        assert_eq!(support_constant(&a1, &sigma(vec![c(-1.0, 0.0)]), &e1).unwrap(), 1.0);
        let m = a2();
        let e2 = QuadraticForm::euclidean(2);
        assert_eq!(support_constant(&m, &sigma(vec![c(0.0, 1.0), c(-1.0, 0.0)]), &e2).unwrap(), 1.0);
        let t = sigma(vec![c(-1.0, 1.0), c(1.0, 1.0)]);
        assert!((support_constant(&m, &t, &e2).unwrap() - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn builds_from_simple_charges() {
        let m = a2();
        let h = HeartRef::new(m.heart_index("S1|E[1]").unwrap(), 1);
        let vals = [c(0.0, -1.0), c(-2.0, -1.0)];
        let s = StabilityCondition::from_simple_charges(&m, h, &vals).unwrap();
        let sl = s.slicing(&m).unwrap();
        for (t, v) in m.simples(h).iter().zip(vals) {
            assert!((sl.z(*t) - v).norm() < 1e-15);
        }
    }

    #[test]
    fn tie_merges_into_one_semistable_factor() {
        let m = a2();
        // φ(S1) = φ(S2) = 1/2: E is semistable of the same phase.
        let s = sigma(vec![c(0.0, 1.0), c(0.0, 2.0)]);
        let sl = s.slicing(&m).unwrap();
        let hn = sl.hn_filtration(&m.object(&[("E", 0), ("S1", 0)]).unwrap()).unwrap();
        assert_eq!(hn.factors.len(), 1);
        assert!(sl.is_semistable(Shifted::new(Indec(2), 0)));
    }
}
