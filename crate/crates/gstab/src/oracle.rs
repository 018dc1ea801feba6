//! Independent reference computations used to cross-check the core crate.
//!
//! Nothing here calls the core HN, mass or distance code. The HN oracle
//! works on explicit representations of the `A₂` quiver over `F₂` and finds
//! destabilising subrepresentations by exhaustive enumeration; the cover
//! oracle measures polygonal paths in the universal cover of `ℂ*`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::sync::OnceLock;

use gstab_core::{Charge, Complex64, DgObject, QuadraticForm};

/// Phase of a nonzero charge lifted into `(k, k+1]`.
fn phase_in_window(z: Complex64, k: i32) -> Option<f64> {
    let s = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (re, im) = (s * z.re, s * z.im + 0.0);
    if im > 0.0 || (im == 0.0 && re < 0.0) {
        Some(k as f64 + im.atan2(re) / PI)
    } else {
        None
    }
}

/// Vectors of `F₂^n` are bitmasks; a subspace is the bitset of its vectors.
fn subspaces(n: usize) -> &'static [u32] {
    static CACHE: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    assert!(n <= 4, "subspace enumeration is limited to dimension 4");
    &CACHE.get_or_init(|| (0..=4).map(enumerate_subspaces).collect())[n]
}

fn enumerate_subspaces(n: usize) -> Vec<u32> {
    let size = 1usize << n;
    let mut seen = BTreeSet::from([1u32]);
    let mut frontier = vec![1u32];
    while let Some(span) = frontier.pop() {
        for v in 1..size {
            if span & (1 << v) != 0 {
                continue;
            }
            let mut next = span;
            for w in 0..size {
                if span & (1 << w) != 0 {
                    next |= 1 << (w ^ v);
                }
            }
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn dim_of(space: u32) -> u32 {
    space.count_ones().trailing_zeros()
}

/// Representation `S1^a ⊕ S2^b ⊕ E^c` of `1 → 2` over `F₂`: `V1 = F₂^{a+c}`,
/// `V2 = F₂^{b+c}`, with the last `c` coordinates of `V1` mapped identically
/// onto the last `c` coordinates of `V2`.
#[derive(Debug, Clone, Copy)]
struct F2Rep {
    a: usize,
    b: usize,
    c: usize,
}

impl F2Rep {
    fn apply(&self, v: usize) -> usize {
        (v >> self.a) << self.b
    }

    fn image(&self, u1: u32) -> u32 {
        let mut out = 0u32;
        for v in 0..(1usize << (self.a + self.c)) {
            if u1 & (1 << v) != 0 {
                out |= 1 << self.apply(v);
            }
        }
        out
    }

    /// All subrepresentations as `(U1, U2)` with `f(U1) ⊆ U2`.
    fn subreps(&self) -> Vec<(u32, u32)> {
        let s1 = subspaces(self.a + self.c);
        let s2 = subspaces(self.b + self.c);
        let mut out = Vec::new();
        for &u1 in s1 {
            let img = self.image(u1);
            for &u2 in s2 {
                if img & !u2 == 0 {
                    out.push((u1, u2));
                }
            }
        }
        out
    }
}

/// One HN factor reported by the oracle: the class in the lattice basis
/// `([S1], [S2])` and the phase.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleFactor {
    pub class: [i64; 2],
    pub phase: f64,
}

/// HN filtration of an `a2_path` object relative to the standard heart with
/// phase window `k` and simple charges `z`, by exhaustive enumeration of
/// subrepresentations in each degree. Summand multiplicities per degree
/// must keep `dim V1, dim V2 ≤ 4`.
pub fn hn_oracle(z: [Complex64; 2], k: i32, obj: &DgObject) -> Option<Vec<OracleFactor>> {
    let mut degrees: Vec<i32> = obj.summands().iter().map(|s| s.shift).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::new();
    // Higher shifts carry higher phases.
    for &d in degrees.iter().rev() {
        let count = |i: u8| obj.summands().iter().filter(|s| s.shift == d && s.indec.0 == i).count();
        let rep = F2Rep { a: count(0), b: count(1), c: count(2) };
        if rep.a + rep.c > 4 || rep.b + rep.c > 4 {
            return None;
        }
        let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
        for (dims, phase) in hn_of_rep(z, k, rep)? {
            out.push(OracleFactor { class: [sign * dims[0], sign * dims[1]], phase: phase + d as f64 });
        }
    }
    Some(out)
}

fn hn_of_rep(z: [Complex64; 2], k: i32, rep: F2Rep) -> Option<Vec<([i64; 2], f64)>> {
    let subs = rep.subreps();
    let charge = |d: [i64; 2]| z[0] * d[0] as f64 + z[1] * d[1] as f64;
    let dims = |(u1, u2): (u32, u32)| [dim_of(u1) as i64, dim_of(u2) as i64];
    let total = [(rep.a + rep.c) as i64, (rep.b + rep.c) as i64];
    let mut current = (1u32, 1u32);
    let mut factors: Vec<([i64; 2], f64)> = Vec::new();
    while dims(current) != total {
        let base = dims(current);
        // Maximal phase among quotients U/current, then the largest such U.
        let mut best: Option<(f64, i64, (u32, u32))> = None;
        for &(u1, u2) in &subs {
            if u1 & current.0 != current.0 || u2 & current.1 != current.1 || (u1, u2) == current {
                continue;
            }
            let d = dims((u1, u2));
            let q = [d[0] - base[0], d[1] - base[1]];
            let p = phase_in_window(charge(q), k)?;
            let size = q[0] + q[1];
            let better = match best {
                None => true,
                Some((bp, bs, _)) => p > bp + 1e-12 || ((p - bp).abs() <= 1e-12 && size > bs),
            };
            if better {
                best = Some((p, size, (u1, u2)));
            }
        }
        let (p, _, next) = best?;
        let d = dims(next);
        factors.push(([d[0] - base[0], d[1] - base[1]], p));
        current = next;
    }
    Some(factors)
}

/// Mass and extreme phases of an object from its oracle HN filtration.
pub fn oracle_mass_phases(z: [Complex64; 2], k: i32, obj: &DgObject) -> Option<(f64, f64, f64)> {
    let hn = hn_oracle(z, k, obj)?;
    let mass = hn.iter().map(|f| (z[0] * f.class[0] as f64 + z[1] * f.class[1] as f64).norm()).sum();
    let hi = hn.iter().map(|f| f.phase).fold(f64::NEG_INFINITY, f64::max);
    let lo = hn.iter().map(|f| f.phase).fold(f64::INFINITY, f64::min);
    Some((mass, hi, lo))
}

/// Standard-heart `a2_path` condition in oracle form.
#[derive(Debug, Clone, Copy)]
pub struct StdSigma {
    pub z: [Complex64; 2],
    pub k: i32,
}

/// Brute-force suprema and infima over a finite list of objects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForce {
    pub slicing: f64,
    pub bridgeland: f64,
    /// `sup |U(E)|/|Z_a(E)|` over objects semistable for `a`.
    pub norm: f64,
    /// `inf |Z_a(E)|/‖E‖` over objects semistable for `a`.
    pub support: f64,
}

pub fn brute_force(a: StdSigma, b: StdSigma, u: &Charge, form: &QuadraticForm, objects: &[DgObject]) -> Option<BruteForce> {
    let mut out = BruteForce { slicing: 0.0, bridgeland: 0.0, norm: 0.0, support: f64::INFINITY };
    for obj in objects {
        let (ma, ha, la) = oracle_mass_phases(a.z, a.k, obj)?;
        let (mb, hb, lb) = oracle_mass_phases(b.z, b.k, obj)?;
        let ds = (ha - hb).abs().max((la - lb).abs());
        out.slicing = out.slicing.max(ds);
        out.bridgeland = out.bridgeland.max(ds).max((ma / mb).ln().abs());
        let hn = hn_oracle(a.z, a.k, obj)?;
        if hn.len() == 1 {
            let c = hn[0].class;
            let za = a.z[0] * c[0] as f64 + a.z[1] * c[1] as f64;
            let uz = u.0[0] * c[0] as f64 + u.0[1] * c[1] as f64;
            out.norm = out.norm.max(uz.norm() / za.norm());
            out.support = out.support.min(za.norm() / form.norm(&[c[0] as f64, c[1] as f64]));
        }
    }
    Some(out)
}

/// Cover point as `(r, θ)` with `θ` the real lift of the argument.
pub type Polar = (f64, f64);

fn chord(p: Polar, q: Polar) -> f64 {
    debug_assert!((p.1 - q.1).abs() <= PI);
    (p.0 * p.0 + q.0 * q.0 - 2.0 * p.0 * q.0 * (p.1 - q.1).cos()).max(0.0).sqrt()
}

/// Shortest polygonal path found between two points of the universal cover
/// of `ℂ*`. Candidates are the straight chord when the angle gap is at most
/// `π`, and paths that drop radially to a small circle, walk around it in up
/// to 62 equal steps, and climb back out. Every segment spans less than `π`
/// so it lifts to the cover without hitting the puncture.
pub fn cover_distance_oracle(p: Polar, q: Polar) -> f64 {
    let gap = q.1 - p.1;
    let mut best = if gap.abs() <= PI { chord(p, q) } else { f64::INFINITY };
    let mut radii: Vec<f64> = (0..=48).map(|i| 10f64.powf(-6.0 + 6.0 * i as f64 / 48.0) * p.0.max(q.0)).collect();
    radii.extend([p.0, q.0]);
    for &rho in &radii {
        if rho <= 0.0 {
            continue;
        }
        for steps in 1..=62usize {
            if (gap / steps as f64).abs() >= PI {
                continue;
            }
            let mut len = (p.0 - rho).abs() + (q.0 - rho).abs();
            let mut prev = (rho, p.1);
            for j in 1..=steps {
                let next = (rho, p.1 + gap * j as f64 / steps as f64);
                len += chord(prev, next);
                prev = next;
            }
            best = best.min(len);
        }
    }
    best
}
