//! Central-charge space `X = Hom(Λ, ℂ) ∖ Δ`, the universal cover of `ℂ*`
//! that models rank-one stability manifolds, and the pullback distance on
//! stability conditions.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::model::{CategoryModel, Charge, Class, HeartRef, ModelId};
use crate::norm::QuadraticForm;
use crate::phase::{in_half_plane, lift_phase, parity_sign};
use crate::stability::StabilityCondition;
use crate::{Error, Result};

/// Charge space of a model with a chosen inner product on coefficient vectors.
#[derive(Debug, Clone)]
pub struct ChargeSpace {
    model: ModelId,
    delta: Vec<Class>,
    form: QuadraticForm,
}

impl ChargeSpace {
    /// `Δ` is the union of the loci `Z(γ) = 0` over indecomposable classes.
    pub fn new(model: &CategoryModel, form: QuadraticForm) -> Result<Self> {
        if form.dim() != model.rank() {
            return Err(Error::DegenerateNorm);
        }
        let delta = model.indecs().map(|x| model.class_of_indec(x)).collect();
        Ok(ChargeSpace { model: model.id(), delta, form })
    }

    pub fn euclidean(model: &CategoryModel) -> Self {
        Self::new(model, QuadraticForm::euclidean(model.rank())).expect("dimension matches")
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn delta(&self) -> &[Class] {
        &self.delta
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn on_discriminant(&self, z: &Charge) -> bool {
        self.delta.iter().any(|c| z.eval(c) == Complex64::new(0.0, 0.0))
    }

    /// Length of `U` as a vector of `ℝ^{2·rank}`: the form applied to the
    /// real and imaginary parts separately.
    pub fn length(&self, u: &Charge) -> f64 {
        let re: Vec<f64> = u.0.iter().map(|z| z.re).collect();
        let im: Vec<f64> = u.0.iter().map(|z| z.im).collect();
        libm::sqrt(self.form.inner(&re, &re) + self.form.inner(&im, &im))
    }

    /// Straight-line distance; `Δ` has real codimension two so removing it
    /// does not change the infimum over paths.
    pub fn charge_distance(&self, z: &Charge, w: &Charge) -> Result<f64> {
        for u in [z, w] {
            if u.rank() != self.form.dim() {
                return Err(Error::RankMismatch { expected: self.form.dim(), found: u.rank() });
            }
            if self.on_discriminant(u) {
                return Err(Error::OnDiscriminant);
            }
        }
        Ok(self.length(&w.sub(z)))
    }
}

/// A point of the universal cover of `ℂ*`, stored as radius, principal angle
/// and sheet so that deck translations are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverPoint {
    r: f64,
    /// In `(−π, π]`.
    angle: f64,
    sheet: i64,
}

impl CoverPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        debug_assert!(r > 0.0 && theta.is_finite());
        let sheet = libm::round(theta / (2.0 * PI));
        let mut angle = theta - 2.0 * PI * sheet;
        let mut sheet = sheet as i64;
        if angle <= -PI {
            angle += 2.0 * PI;
            sheet -= 1;
        } else if angle > PI {
            angle -= 2.0 * PI;
            sheet += 1;
        }
        CoverPoint { r, angle, sheet }
    }

    pub fn from_parts(r: f64, angle: f64, sheet: i64) -> Self {
        let p = CoverPoint::new(r, angle);
        CoverPoint { sheet: p.sheet + sheet, ..p }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn sheet(&self) -> i64 {
        self.sheet
    }

    pub fn theta(&self) -> f64 {
        self.angle + 2.0 * PI * self.sheet as f64
    }

    /// Action of the deck generator `θ ↦ θ + 2πk`.
    pub fn deck(&self, k: i64) -> Self {
        CoverPoint { sheet: self.sheet + k, ..*self }
    }

    /// Projection to `ℂ*` under `Z(S) = −r·e^{iθ}`.
    pub fn project(&self) -> Complex64 {
        -Complex64::from_polar(self.r, self.angle)
    }

    /// The point of a rank-one stability condition: `r = |Z(S)|`,
    /// `θ = π(φ(S) − 1)`.
    pub fn of_stability(model: &CategoryModel, sigma: &StabilityCondition) -> Result<Self> {
        require_rank_one(model, "cover point")?;
        let sl = sigma.slicing(model)?;
        let phi = sl.simple_phases()[0];
        let z = sigma.charge.0[0];
        // Phase = k + a with a in (0, 1]; keep the integer part exact.
        let k = sigma.heart.shift as i64 + model.simples(sigma.heart)[0].shift as i64;
        let frac = phi - sigma.heart.shift as f64;
        // θ = π(k + frac − 1); split into sheet and principal angle.
        let m = k - 1;
        let (half, rem) = (m.div_euclid(2), m.rem_euclid(2));
        let p = CoverPoint::new(z.norm(), PI * (rem as f64 + frac));
        Ok(p.deck(half))
    }

    /// Inverse of [`CoverPoint::of_stability`] on the standard heart.
    pub fn to_stability(&self, model: &CategoryModel) -> Result<StabilityCondition> {
        require_rank_one(model, "cover point")?;
        let z = self.project();
        // φ = θ/π + 1; pick the window containing it, guarding rounding.
        let phi_hint = self.angle / PI + 1.0;
        let base = 2 * self.sheet as i32;
        let k0 = libm::ceil(phi_hint) as i32 - 1;
        let k = [k0, k0 - 1, k0 + 1]
            .into_iter()
            .find(|&k| in_half_plane(z, k))
            .ok_or(Error::OnDiscriminant)?;
        Ok(StabilityCondition::new(model.id(), Charge(vec![z]), HeartRef::standard(base + k)))
    }
}

fn require_rank_one(model: &CategoryModel, op: &'static str) -> Result<()> {
    match model.id() {
        ModelId::A1Cyn(_) | ModelId::A1Path => Ok(()),
        other => Err(Error::UnsupportedForModel { op, model: other }),
    }
}

/// Length-space distance on the universal cover of `ℂ*` with the flat
/// metric: the chord when the angular gap is at most `π`, otherwise the path
/// through the puncture of length `r_p + r_q`.
pub fn cover_distance(p: &CoverPoint, q: &CoverPoint) -> f64 {
    let d_sheet = (p.sheet - q.sheet) as f64;
    let delta = (p.angle - q.angle) + 2.0 * PI * d_sheet;
    if delta.abs() <= PI {
        let (s, c) = (libm::sin(delta), libm::cos(delta));
        libm::hypot(p.r * c - q.r, p.r * s)
    } else {
        p.r + q.r
    }
}

/// Deck translations compared in Dirichlet checks; larger `|k|` only give
/// `r_x + r_y`, already attained at `|k| = 2`.
pub const K_WINDOW: i64 = 4;

/// `y ∈ D_x`: strictly closer to `x` than to any deck translate of `x`.
pub fn in_dirichlet_domain(x: &CoverPoint, y: &CoverPoint) -> bool {
    let d0 = cover_distance(x, y);
    (1..=K_WINDOW).all(|k| cover_distance(&x.deck(k), y) > d0 && cover_distance(&x.deck(-k), y) > d0)
}

/// Bounds on the pullback distance between two stability conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBounds {
    pub lower: f64,
    pub upper: f64,
}

impl DistanceBounds {
    pub const GAP_TOL: f64 = 1e-6;

    pub fn exact(d: f64) -> Self {
        DistanceBounds { lower: d, upper: d }
    }

    pub fn has_gap(&self) -> bool {
        self.upper - self.lower > Self::GAP_TOL
    }
}

/// The pullback distance `d̃(σ, τ)`.
///
/// Rank-one models are exact. On `a2_path` the lower bound is the charge
/// distance and the upper bound is the shortest lifted polygonal path through
/// a fixed set of waypoint charges; `+∞` if none lifts inside the catalog.
pub fn stab_distance(
    model: &CategoryModel,
    space: &ChargeSpace,
    sigma: &StabilityCondition,
    tau: &StabilityCondition,
) -> Result<DistanceBounds> {
    sigma.validate(model)?;
    tau.validate(model)?;
    if tau.model != sigma.model {
        return Err(Error::ModelMismatch { expected: sigma.model, found: tau.model });
    }
    if space.model() != model.id() {
        return Err(Error::ModelMismatch { expected: model.id(), found: space.model() });
    }
    match model.id() {
        ModelId::Zero => Ok(DistanceBounds::exact(0.0)),
        ModelId::A1Cyn(_) | ModelId::A1Path => {
            let (p, q) = (CoverPoint::of_stability(model, sigma)?, CoverPoint::of_stability(model, tau)?);
            let scale = libm::sqrt(space.form().entry(0, 0));
            Ok(DistanceBounds::exact(scale * cover_distance(&p, &q)))
        }
        ModelId::A2Path => {
            let lower = space.charge_distance(&sigma.charge, &tau.charge)?;
            if sigma == tau {
                return Ok(DistanceBounds::exact(0.0));
            }
            let upper = waypoint_upper_bound(model, space, sigma, tau);
            Ok(DistanceBounds { lower, upper: upper.max(lower) })
        }
    }
}

/// Lifts the straight charge path from `sigma.charge` to `target`, tilting
/// the heart whenever a simple's charge leaves its half-plane. Returns
/// `None` if the path meets `Δ` or leaves the catalog.
pub fn lift_segment(model: &CategoryModel, sigma: &StabilityCondition, target: &Charge) -> Option<StabilityCondition> {
    let z0 = &sigma.charge;
    let dz = target.sub(z0);
    let mut heart = sigma.heart;
    let mut t = 0.0f64;
    for _ in 0..64 {
        let s = parity_sign(heart.shift);
        // Earliest time ≥ t at which a simple's rotated charge reaches the
        // real axis while moving downward.
        let mut event: Option<(f64, usize, bool)> = None;
        for (j, &simple) in model.simples(heart).iter().enumerate() {
            let c = model.class_of_shifted(simple);
            let (a, b) = (z0.eval(&c) * s, dz.eval(&c) * s);
            if b.im == 0.0 {
                if a.im == 0.0 && a.re + b.re >= 0.0 {
                    return None;
                }
                continue;
            }
            if b.im > 0.0 {
                continue;
            }
            let te = (-a.im / b.im).max(t);
            if te > 1.0 {
                continue;
            }
            let re = a.re + b.re * te;
            if re == 0.0 {
                return None;
            }
            // A boundary reached on the positive axis forces a forward tilt;
            // leaving through the negative axis a backward one.
            let forward = re > 0.0;
            if event.is_none_or(|(t0, ..)| te < t0) {
                event = Some((te, j, forward));
            }
        }
        let Some((te, j, forward)) = event else {
            let out = StabilityCondition::new(sigma.model, target.clone(), heart);
            return out.validate(model).ok().map(|_| out);
        };
        let (idx, delta) = model.tilt(heart.heart, j, forward)?;
        heart = HeartRef::new(idx, heart.shift - delta);
        t = te;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cost(f64);

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for a min-heap.
        other.0.total_cmp(&self.0)
    }
}

const WAYPOINT_SCALES: [f64; 4] = [1.0, 1e-1, 1e-2, 1e-3];
const MAX_STATES: usize = 4096;

fn waypoint_upper_bound(
    model: &CategoryModel,
    space: &ChargeSpace,
    sigma: &StabilityCondition,
    tau: &StabilityCondition,
) -> f64 {
    let mut points = vec![sigma.charge.clone(), tau.charge.clone()];
    for base in [&sigma.charge, &tau.charge] {
        for &s in &WAYPOINT_SCALES {
            for j in 0..8 {
                let w = base.scale(Complex64::from_polar(s, PI * j as f64 / 4.0));
                if !space.on_discriminant(&w) {
                    points.push(w);
                }
            }
        }
    }
    let edge = |a: usize, b: usize| space.length(&points[b].sub(&points[a]));

    let mut best: BTreeMap<(usize, HeartRef), f64> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    best.insert((0, sigma.heart), 0.0);
    heap.push((Cost(0.0), 0usize, sigma.heart));
    while let Some((Cost(d), i, heart)) = heap.pop() {
        if i == 1 && heart == tau.heart {
            return d;
        }
        if best.get(&(i, heart)).is_some_and(|&b| d > b) {
            continue;
        }
        let here = StabilityCondition::new(sigma.model, points[i].clone(), heart);
        for j in 0..points.len() {
            if j == i {
                continue;
            }
            let Some(next) = lift_segment(model, &here, &points[j]) else { continue };
            let nd = d + edge(i, j);
            let key = (j, next.heart);
            if best.get(&key).is_none_or(|&b| nd < b) {
                if best.len() >= MAX_STATES && !best.contains_key(&key) {
                    continue;
                }
                best.insert(key, nd);
                heap.push((Cost(nd), j, next.heart));
            }
        }
    }
    f64::INFINITY
}

/// Phase of the rank-one simple at a cover point, used to cross-check the
/// cover identification.
pub fn cover_phase(p: &CoverPoint) -> f64 {
    p.theta() / PI + 1.0
}

/// Phase lift of `Z(S)` for a rank-one condition; `None` if invalid.
pub fn rank_one_phase(sigma: &StabilityCondition) -> Option<f64> {
    lift_phase(*sigma.charge.0.first()?, sigma.heart.shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn charge_distance_examples() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let s = ChargeSpace::euclidean(&a1);
        let d = |a: f64, b: f64| s.charge_distance(&Charge(vec![c(a, 0.0)]), &Charge(vec![c(b, 0.0)]));
        assert_eq!(d(-1.0, -2.0).unwrap(), 1.0);
        assert_eq!(d(1.0, -1.0).unwrap(), 2.0);
        assert_eq!(d(0.0, -1.0), Err(Error::OnDiscriminant));
        let a2 = CategoryModel::load(ModelId::A2Path).unwrap();
        let s = ChargeSpace::euclidean(&a2);
        let z = Charge(vec![c(0.0, 1.0), c(-1.0, 0.0)]);
        let w = Charge(vec![c(0.0, 1.0), c(-2.0, 0.0)]);
        assert_eq!(s.charge_distance(&z, &w).unwrap(), 1.0);
        // Z(E) = 0 lies on Δ.
        assert!(s.on_discriminant(&Charge(vec![c(1.0, 0.0), c(-1.0, 0.0)])));
    }

    #[test]
    fn cover_distance_examples() {
        let p = CoverPoint::new(1.0, 0.0);
        assert!((cover_distance(&p, &CoverPoint::new(1.0, PI / 2.0)) - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(cover_distance(&p, &CoverPoint::new(1.0, 2.0 * PI)), 2.0);
        assert!((cover_distance(&p, &CoverPoint::new(1.0, PI)) - 2.0).abs() < 1e-15);
        assert_eq!(cover_distance(&p, &p.deck(3)), 2.0);
    }

    #[test]
    fn cover_point_normalisation() {
        let p = CoverPoint::new(2.0, 5.0 * PI);
        assert_eq!(p.sheet(), 2);
        assert!((p.angle() - PI).abs() < 1e-12);
        let q = CoverPoint::new(1.0, -PI);
        assert_eq!((q.sheet(), q.angle()), (-1, PI));
    }

    #[test]
    fn dirichlet_examples() {
        let x = CoverPoint::new(1.0, 0.0);
        assert!(in_dirichlet_domain(&x, &CoverPoint::new(0.5, 1.0)));
        assert!(!in_dirichlet_domain(&x, &CoverPoint::new(1.0, 2.0 * PI)));
        assert!(in_dirichlet_domain(&x, &x));
    }

    #[test]
    fn rank_one_identification_round_trips() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(3)).unwrap();
        let s = StabilityCondition::new(a1.id(), Charge(vec![c(-1.0, 0.0)]), HeartRef::standard(0));
        let p = CoverPoint::of_stability(&a1, &s).unwrap();
        assert_eq!((p.r(), p.angle(), p.sheet()), (1.0, 0.0, 0));
        let t = StabilityCondition::new(a1.id(), Charge(vec![c(-1.0, 0.0)]), HeartRef::standard(2));
        let q = CoverPoint::of_stability(&a1, &t).unwrap();
        assert_eq!(q, p.deck(1));
        for (z, k) in [(c(0.3, -0.7), 1), (c(-2.0, 0.5), -3), (c(1.0, 0.0), 5)] {
            let s = StabilityCondition::new(a1.id(), Charge(vec![z]), HeartRef::standard(k));
            if s.validate(&a1).is_err() {
                continue;
            }
            let p = CoverPoint::of_stability(&a1, &s).unwrap();
            assert!((cover_phase(&p) - rank_one_phase(&s).unwrap()).abs() < 1e-12);
            let back = p.to_stability(&a1).unwrap();
            assert_eq!(back.heart, s.heart);
            assert!(back.charge.max_abs_diff(&s.charge) < 1e-12);
        }
    }

    #[test]
    fn stab_distance_examples() {
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        let sp = ChargeSpace::euclidean(&a1);
        let s = StabilityCondition::new(a1.id(), Charge(vec![c(-1.0, 0.0)]), HeartRef::standard(0));
        let t = StabilityCondition::new(a1.id(), Charge(vec![c(-1.0, 0.0)]), HeartRef::standard(2));
        assert_eq!(stab_distance(&a1, &sp, &s, &t).unwrap(), DistanceBounds::exact(2.0));
        assert_eq!(stab_distance(&a1, &sp, &s, &s).unwrap(), DistanceBounds::exact(0.0));

        let a2 = CategoryModel::load(ModelId::A2Path).unwrap();
        let sp = ChargeSpace::euclidean(&a2);
        let s = StabilityCondition::new(a2.id(), Charge(vec![c(0.0, 1.0), c(-1.0, 0.0)]), HeartRef::standard(0));
        let t = StabilityCondition::new(a2.id(), Charge(vec![c(-1.0, 1.0), c(-1.0, 0.5)]), HeartRef::standard(0));
        let b = stab_distance(&a2, &sp, &s, &t).unwrap();
        assert!(!b.has_gap(), "{b:?}");
        assert!((b.lower - libm::sqrt(1.25)).abs() < 1e-15);
    }

    #[test]
    fn lifting_across_a_wall_tilts_the_heart() {
        let a2 = CategoryModel::load(ModelId::A2Path).unwrap();
        let s = StabilityCondition::new(a2.id(), Charge(vec![c(-1.0, 1.0), c(1.0, 1.0)]), HeartRef::standard(0));
        // S1 leaves through the negative real axis: backward tilt at S1.
        let target = Charge(vec![c(-1.0, -0.5), c(1.0, 1.0)]);
        let out = lift_segment(&a2, &s, &target).unwrap();
        assert_ne!(out.heart, s.heart);
        out.validate(&a2).unwrap();
        let phases = out.slicing(&a2).unwrap();
        // Continuity: S2 keeps its phase 1/4.
        let s2 = crate::model::Shifted::new(crate::Indec(1), 0);
        assert!((phases.phase_of(s2).unwrap() - 0.25).abs() < 1e-12);
        // Going back returns to the original heart.
        assert_eq!(lift_segment(&a2, &out, &s.charge).unwrap().heart, s.heart);
    }
}
