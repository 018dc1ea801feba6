//! Tail HN filtrations of affine sequences and the limit data derived from
//! them: massless objects, limiting phases and the limiting support constant.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use super::AffineSequence;
use crate::model::{CategoryModel, DgObject, Placement, Shifted, ThickSubcategory};
use crate::norm::QuadraticForm;
use crate::phase::{closure_phase, cross, lift_phase};
use crate::{Error, Result, PHASE_TIE_TOL, ZERO_CHARGE_TOL};

/// A stable piece along the tail, with charge `α + β/n` in the half-plane
/// of shift `window`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SymPiece {
    pub obj: Shifted,
    pub window: i32,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SymPiece {
    pub fn limit_phase(&self) -> f64 {
        if self.alpha != Complex64::new(0.0, 0.0) {
            closure_phase(self.alpha, self.window)
        } else {
            // Constant argument along the tail.
            lift_phase(self.beta, self.window).unwrap_or_else(|| closure_phase(self.beta, self.window))
        }
    }

    pub fn is_massless(&self) -> bool {
        self.alpha.norm() <= ZERO_CHARGE_TOL
    }
}

/// Eventual order of the tail phases of two pieces, with the first index from
/// which it holds. `Equal` means the phases agree for every `n`.
fn eventual_cmp(model: &CategoryModel, p: &SymPiece, q: &SymPiece) -> Result<(Ordering, u64)> {
    if p.window != q.window {
        return Ok((p.window.cmp(&q.window), 1));
    }
    // Sign of cross(Z_n(q), Z_n(p)) as a polynomial in x = 1/n.
    let coef = [
        cross(q.alpha, p.alpha),
        cross(q.alpha, p.beta) + cross(q.beta, p.alpha),
        cross(q.beta, p.beta),
    ];
    let scale = [
        q.alpha.norm() * p.alpha.norm(),
        q.alpha.norm() * p.beta.norm() + q.beta.norm() * p.alpha.norm(),
        q.beta.norm() * p.beta.norm(),
    ];
    let Some(lead) = coef.iter().position(|&c| c != 0.0) else {
        return Ok((Ordering::Equal, 1));
    };
    if coef[lead].abs() <= PHASE_TIE_TOL * scale[lead] {
        return Err(Error::UnresolvedTie {
            sub: model.shifted_name(p.obj),
            quot: model.shifted_name(q.obj),
        });
    }
    let sign = coef[lead].signum();
    let ord = if sign > 0.0 { Ordering::Greater } else { Ordering::Less };
    let eval = |n: u64| {
        let x = 1.0 / n as f64;
        coef[0] + x * (coef[1] + x * coef[2])
    };
    let mut n = match smallest_positive_root(coef) {
        None => 1,
        Some(x) => (libm::floor(1.0 / x).min(9.0e15) as u64).saturating_add(1),
    };
    while eval(n) * sign <= 0.0 {
        n += 1;
    }
    Ok((ord, n))
}

fn smallest_positive_root([c0, c1, c2]: [f64; 3]) -> Option<f64> {
    let mut roots: Vec<f64> = Vec::new();
    if c2 == 0.0 {
        if c1 != 0.0 {
            roots.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let sq = libm::sqrt(disc);
            // Numerically stable pair.
            let sgn = if c1 >= 0.0 { 1.0 } else { -1.0 };
            let q = -0.5 * (c1 + sgn * sq);
            if q != 0.0 {
                roots.push(q / c2);
                roots.push(c0 / q);
            } else {
                roots.push(0.0);
            }
        }
    }
    roots.into_iter().filter(|&x| x > 0.0).min_by(f64::total_cmp)
}

/// A factor of the tail HN filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizedFactor {
    pub object: DgObject,
    pub limit_phase: f64,
    /// `Z_∞` of the factor.
    pub limit_charge: Complex64,
    /// Coefficient of `1/n` in the factor's charge.
    pub drift: Complex64,
}

impl StabilizedFactor {
    pub fn is_massless(&self) -> bool {
        self.limit_charge.norm() <= ZERO_CHARGE_TOL
    }
}

/// HN filtration of an object for every `n > N_E`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizedHn {
    pub n_e: u64,
    /// In decreasing phase order along the tail.
    pub factors: Vec<StabilizedFactor>,
}

impl StabilizedHn {
    pub fn objects(&self) -> Vec<DgObject> {
        self.factors.iter().map(|f| f.object.clone()).collect()
    }

    pub fn max_limit_phase(&self) -> f64 {
        self.factors.iter().map(|f| f.limit_phase).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_limit_phase(&self) -> f64 {
        self.factors.iter().map(|f| f.limit_phase).fold(f64::INFINITY, f64::min)
    }
}

pub(crate) struct Analysis<'a> {
    pub model: &'a CategoryModel,
    pub seq: &'a AffineSequence,
}

impl<'a> Analysis<'a> {
    pub fn new(model: &'a CategoryModel, seq: &'a AffineSequence) -> Result<Self> {
        if seq.model() != model.id() {
            return Err(Error::ModelMismatch { expected: model.id(), found: seq.model() });
        }
        Ok(Analysis { model, seq })
    }

    fn piece(&self, obj: Shifted, window: i32) -> SymPiece {
        let c = self.model.class_of_shifted(obj);
        SymPiece { obj, window, alpha: self.seq.a().eval(&c), beta: self.seq.b().eval(&c) }
    }

    fn simple_piece(&self, j: usize, degree: i32) -> SymPiece {
        let h = self.seq.heart();
        self.piece(self.model.simples(h)[j].shifted(degree), h.shift + degree)
    }

    /// Tail pieces of one shifted indecomposable and the index from which
    /// they are fixed.
    pub fn pieces(&self, x: Shifted) -> Result<(Vec<SymPiece>, u64)> {
        match self.model.placement(self.seq.heart().heart, x) {
            Placement::Simple { simple, degree } => Ok((vec![self.simple_piece(simple, degree)], 1)),
            Placement::Extension { sub, quot } => {
                let (a, b) = (self.simple_piece(sub.0, sub.1), self.simple_piece(quot.0, quot.1));
                if sub.1 > quot.1 {
                    return Ok((vec![a, b], 1));
                }
                let (ord, n) = eventual_cmp(self.model, &a, &b)?;
                if ord == Ordering::Greater {
                    Ok((vec![a, b], n))
                } else {
                    Ok((vec![self.piece(x, a.window)], n))
                }
            }
        }
    }

    pub fn stabilized_hn(&self, obj: &DgObject) -> Result<StabilizedHn> {
        if obj.is_zero() {
            return Err(Error::ZeroObject);
        }
        self.model.check_object(obj)?;
        let mut pieces = Vec::new();
        let mut n_e = self.seq.n0();
        for &s in obj.summands() {
            let (p, n) = self.pieces(s)?;
            pieces.extend(p);
            n_e = n_e.max(n);
        }
        // Pairwise eventual order; insertion sort into decreasing phase.
        let m = pieces.len();
        let mut ord = vec![Ordering::Equal; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let (o, n) = eventual_cmp(self.model, &pieces[i], &pieces[j])?;
                ord[i * m + j] = o;
                ord[j * m + i] = o.reverse();
                n_e = n_e.max(n);
            }
        }
        let mut idx: Vec<usize> = (0..m).collect();
        idx.sort_by(|&i, &j| ord[j * m + i].then(pieces[i].obj.cmp(&pieces[j].obj)));
        let mut factors: Vec<StabilizedFactor> = Vec::new();
        let mut lead: Option<usize> = None;
        for &i in &idx {
            let p = &pieces[i];
            match lead {
                Some(l) if ord[l * m + i] == Ordering::Equal => {
                    let f = factors.last_mut().expect("group open");
                    f.object = f.object.direct_sum(&DgObject::single(p.obj));
                    f.limit_charge += p.alpha;
                    f.drift += p.beta;
                }
                _ => {
                    lead = Some(i);
                    factors.push(StabilizedFactor {
                        object: DgObject::single(p.obj),
                        limit_phase: p.limit_phase(),
                        limit_charge: p.alpha,
                        drift: p.beta,
                    });
                }
            }
        }
        Ok(StabilizedHn { n_e, factors })
    }

    pub fn is_massless(&self, obj: &DgObject) -> Result<bool> {
        Ok(self.stabilized_hn(obj)?.factors.iter().all(StabilizedFactor::is_massless))
    }

    pub fn massless_subcategory(&self) -> Result<ThickSubcategory> {
        let mut gens = Vec::new();
        for x in self.model.indecs() {
            let obj = DgObject::single(Shifted::new(x, 0));
            if self.is_massless(&obj)? {
                gens.push(obj);
            }
        }
        Ok(self.model.thick_closure(&gens))
    }
}

/// The tail HN filtration of `obj` and the index `N_E` after which it is
/// constant. Phase comparisons are decided by the sign of a quadratic in
/// `1/n`; pieces whose phases agree for every `n` form one factor.
pub fn stabilized_hn(model: &CategoryModel, seq: &AffineSequence, obj: &DgObject) -> Result<StabilizedHn> {
    Analysis::new(model, seq)?.stabilized_hn(obj)
}

/// `K_σ`: thick closure of the indecomposables whose tail HN factors all
/// have vanishing limit charge.
pub fn massless_subcategory(model: &CategoryModel, seq: &AffineSequence) -> Result<ThickSubcategory> {
    Analysis::new(model, seq)?.massless_subcategory()
}

/// `lim m_{σ_n}(obj) = Σ |Z_∞(F)|` over tail HN factors.
pub fn limit_mass(model: &CategoryModel, seq: &AffineSequence, obj: &DgObject) -> Result<f64> {
    Ok(stabilized_hn(model, seq, obj)?.factors.iter().map(|f| f.limit_charge.norm()).sum())
}

/// `φ` with `obj ∈ P_∞(φ)`, if both extreme phases converge to it.
pub fn limiting_phase(model: &CategoryModel, seq: &AffineSequence, obj: &DgObject) -> Result<Option<f64>> {
    let hn = stabilized_hn(model, seq, obj)?;
    let (hi, lo) = (hn.max_limit_phase(), hn.min_limit_phase());
    Ok((hi - lo <= PHASE_TIE_TOL).then_some(hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingSupport {
    /// `+∞` when no tail-semistable indecomposable keeps its mass.
    pub c: f64,
    pub holds: bool,
}

/// `C = lim C_n`, the infimum of `|Z_n(E)| / ‖E‖` over tail-semistable
/// indecomposables with nonzero limit charge.
pub fn limiting_support(model: &CategoryModel, seq: &AffineSequence, form: &QuadraticForm) -> Result<LimitingSupport> {
    if form.dim() != model.rank() {
        return Err(Error::DegenerateNorm);
    }
    let an = Analysis::new(model, seq)?;
    let mut c = f64::INFINITY;
    for x in model.indecs() {
        let (pieces, _) = an.pieces(Shifted::new(x, 0))?;
        if let [p] = pieces.as_slice() {
            if !p.is_massless() {
                c = c.min(p.alpha.norm() / form.norm_class(&model.class_of_indec(x)));
            }
        }
    }
    Ok(LimitingSupport { c, holds: c > ZERO_CHARGE_TOL })
}
