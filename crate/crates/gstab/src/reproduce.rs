//! The two worked examples: the rank-one CY category, whose completion adds
//! a single boundary point, and the `A₂` pair of sequences with different
//! limiting slicings but equal limits.

use std::f64::consts::PI;

use gstab_core::completion::{equivalent, j_map, limiting_phase, AffineSequence, GeneralizedStability};
use gstab_core::geometry::{cover_distance, CoverPoint};
use gstab_core::{CategoryModel, Charge, Complex64, DgObject, HeartRef, ModelId, QuadraticForm, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::cover_distance_oracle;

/// Sheets of the cover sampled by the rank-one example.
pub const SHEETS: std::ops::RangeInclusive<i32> = -2..=2;

fn polar(r: f64, phase: f64) -> Complex64 {
    Complex64::from_polar(r, PI * phase)
}

/// Collapsing sequence `Z_n(S) = B/n` on the heart with phase window `h`.
pub fn collapse_sequence(model: &CategoryModel, h: i32, b: Complex64) -> Result<AffineSequence> {
    AffineSequence::new(model, HeartRef::standard(h), Charge(vec![Complex64::new(0.0, 0.0)]), Charge(vec![b]), None)
}

fn random_collapse(model: &CategoryModel, rng: &mut ChaCha8Rng, h: i32) -> Result<AffineSequence> {
    let b = polar(rng.gen_range(0.1..3.0), h as f64 + rng.gen_range(0.01..1.0));
    collapse_sequence(model, h, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankOneExample {
    pub model: ModelId,
    /// Collapse sequences placed on each sampled sheet.
    pub sheet_sequences: usize,
    /// Whether all sheet-sampled collapse sequences are pairwise equivalent.
    pub sheets_one_class: bool,
    pub random_collapse: usize,
    /// Equivalence classes among the random collapse sequences.
    pub boundary_classes: usize,
    /// Collapse sequences whose image is `(whole category, zero)`.
    pub collapse_images_ok: usize,
    pub interior: usize,
    /// Interior sequences whose image is `(0, limit charge)`.
    pub interior_images_ok: usize,
    /// `d((1, θ), (1, θ + 2π))` computed exactly.
    pub sheet_distance: f64,
    /// The same distance by path sampling.
    pub sheet_distance_oracle: f64,
}

impl RankOneExample {
    pub fn passed(&self) -> bool {
        self.sheets_one_class
            && self.boundary_classes == 1
            && self.collapse_images_ok == self.random_collapse + self.sheet_sequences
            && self.interior_images_ok == self.interior
    }
}

/// Partitions `seqs` into classes of `equivalent`.
pub fn classes(model: &CategoryModel, seqs: &[AffineSequence]) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    'next: for (i, s) in seqs.iter().enumerate() {
        for class in &mut out {
            if equivalent(model, &seqs[class[0]], s)? {
                class.push(i);
                continue 'next;
            }
        }
        out.push(vec![i]);
    }
    Ok(out)
}

pub fn rank_one_example(cy: u32, samples: usize, interior: usize, seed: u64) -> Result<RankOneExample> {
    let model = CategoryModel::load(ModelId::A1Cyn(cy))?;
    let form = QuadraticForm::euclidean(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Phase windows 2k and 2k+1 cover sheet k.
    let mut on_sheets = Vec::new();
    for k in SHEETS {
        for h in [2 * k, 2 * k + 1] {
            on_sheets.push(random_collapse(&model, &mut rng, h)?);
        }
    }
    let sheets_one_class = classes(&model, &on_sheets)?.len() == 1;
    let random: Vec<AffineSequence> = (0..samples)
        .map(|_| {
            let h = rng.gen_range(2 * SHEETS.start()..=2 * SHEETS.end() + 1);
            random_collapse(&model, &mut rng, h)
        })
        .collect::<Result<_>>()?;
    let boundary_classes = classes(&model, &random)?.len();
    let mut collapse_images_ok = 0;
    for s in on_sheets.iter().chain(&random) {
        let img = j_map(&model, s, &form)?.image;
        if img.kernel == model.whole() && img.quotient.is_none() {
            collapse_images_ok += 1;
        }
    }
    let mut interior_images_ok = 0;
    for _ in 0..interior {
        let h = rng.gen_range(-4..=5);
        let a = polar(rng.gen_range(0.1..3.0), h as f64 + rng.gen_range(0.05..0.95));
        let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let s = AffineSequence::new(&model, HeartRef::standard(h), Charge(vec![a]), Charge(vec![b]), None)?;
        let img = j_map(&model, &s, &form)?.image;
        let ok = img.kernel.is_zero()
            && img.quotient.as_ref().is_some_and(|q| q.charge.max_abs_diff(s.a()) <= 1e-12 && q.heart == s.heart());
        interior_images_ok += usize::from(ok);
    }
    let (p, q) = (CoverPoint::new(1.0, 0.0), CoverPoint::new(1.0, 2.0 * PI));
    Ok(RankOneExample {
        model: model.id(),
        sheet_sequences: on_sheets.len(),
        sheets_one_class,
        random_collapse: samples,
        boundary_classes,
        collapse_images_ok,
        interior,
        interior_images_ok,
        sheet_distance: cover_distance(&p, &q),
        sheet_distance_oracle: cover_distance_oracle((1.0, 0.0), (1.0, 2.0 * PI)),
    })
}

/// One sample of the distance between a point and its deck translate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetSample {
    pub r: f64,
    pub theta: f64,
    pub k: i64,
    pub exact: f64,
    pub oracle: f64,
}

pub const SHEET_RADII: [f64; 4] = [1e-3, 1e-2, 1e-1, 1.0];

/// `d((r, θ), (r, θ + 2πk))` for every radius in [`SHEET_RADII`], a few base
/// angles and `k ∈ {±1, ±2, ±3}`.
pub fn sheet_distance_law() -> Vec<SheetSample> {
    let mut out = Vec::new();
    for r in SHEET_RADII {
        for theta in [-2.5, 0.0, 1.0, 3.0] {
            for k in [-3i64, -2, -1, 1, 2, 3] {
                let p = CoverPoint::new(r, theta);
                let exact = cover_distance(&p, &p.deck(k));
                let oracle = cover_distance_oracle((r, theta), (r, theta + 2.0 * PI * k as f64));
                out.push(SheetSample { r, theta, k, exact, oracle });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemarkExample {
    pub z: [Complex64; 2],
    /// Limiting phases of `S2` for the two sequences.
    pub phase_s2: [Option<f64>; 2],
    pub phase_s1: [Option<f64>; 2],
    pub equivalent: bool,
    pub images: [GeneralizedStability; 2],
    /// `Z̄([S2])` of the first image.
    pub zbar_s2: Option<Complex64>,
}

impl RemarkExample {
    pub fn kernel_label(&self, model: &CategoryModel) -> String {
        model.thick_label(self.images[0].kernel)
    }
}

/// `Z_n = (z/n, −1)` on the standard heart, for the two given values of `z`.
pub fn remark_sequence(model: &CategoryModel, z: Complex64) -> Result<AffineSequence> {
    AffineSequence::new(
        model,
        HeartRef::standard(0),
        Charge(vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]),
        Charge(vec![z, Complex64::new(0.0, 0.0)]),
        None,
    )
}

pub fn remark_example(z: Complex64, w: Complex64) -> Result<RemarkExample> {
    let model = CategoryModel::load(ModelId::A2Path)?;
    let form = QuadraticForm::euclidean(2);
    let (s, t) = (remark_sequence(&model, z)?, remark_sequence(&model, w)?);
    let obj = |name: &str| model.object(&[(name, 0)]).expect("built-in symbol");
    let phases = |o: &DgObject| -> Result<[Option<f64>; 2]> {
        Ok([limiting_phase(&model, &s, o)?, limiting_phase(&model, &t, o)?])
    };
    let images = [j_map(&model, &s, &form)?.image, j_map(&model, &t, &form)?.image];
    let zbar_s2 = images[0].quotient.as_ref().map(|q| {
        let quotient = model.quotient(images[0].kernel).expect("lattice node");
        q.charge.eval(&quotient.project(&model.class_of(&obj("S2"))))
    });
    Ok(RemarkExample {
        z: [z, w],
        phase_s2: phases(&obj("S2"))?,
        phase_s1: phases(&obj("S1"))?,
        equivalent: equivalent(&model, &s, &t)?,
        images,
        zbar_s2,
    })
}

/// `z = i` and `z′ = e^{iπ/3}`.
pub fn remark_default() -> Result<RemarkExample> {
    remark_example(Complex64::new(0.0, 1.0), Complex64::from_polar(1.0, PI / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_boundary_is_a_point() {
        let ex = rank_one_example(2, 20, 5, 7).unwrap();
        assert!(ex.passed(), "{ex:?}");
        assert_eq!(ex.sheet_distance, 2.0);
    }

    #[test]
    fn remark_limits() {
        let ex = remark_default().unwrap();
        assert_eq!(ex.phase_s2, [Some(1.0), Some(1.0)]);
        assert!((ex.phase_s1[0].unwrap() - 0.5).abs() < 1e-15);
        assert!((ex.phase_s1[1].unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(ex.equivalent);
        assert!(ex.images[0].same_as(&ex.images[1]));
        assert_eq!(ex.zbar_s2, Some(Complex64::new(-1.0, 0.0)));
    }
}
