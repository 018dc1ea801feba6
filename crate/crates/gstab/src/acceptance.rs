//! The acceptance suite. Each criterion is deterministic for a fixed seed and
//! reports pass/fail with a one-line summary.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use gstab_core::completion::{
    equivalent, injectivity_probe, j_map, limiting_support, massless_subcategory, stabilized_hn, AffineSequence,
    JImage,
};
use gstab_core::geometry::{cover_distance, ChargeSpace, CoverPoint};
use gstab_core::norm::quotient_form;
use gstab_core::stability::{bridgeland_distance, sigma_norm, slicing_distance, support_constant};
use gstab_core::{
    CategoryModel, Charge, Complex64, DgObject, HeartRef, Indec, ModelId, QuadraticForm, Shifted, StabilityCondition,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::{brute_force, hn_oracle, StdSigma};
use crate::reproduce::{rank_one_example, remark_default, sheet_distance_law};

pub const SEED: u64 = 0x6a5_7ab;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} #{:<2} {:<44} {:>9.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 11] = [
    "rank-one boundary is a single point",
    "sheet distance law",
    "A2 sequences with different limit slicings",
    "mass additivity and triangle inequality",
    "metric axioms",
    "HN stabilization",
    "massless subcategory thick and invariant",
    "limiting support invariant",
    "quotient stability validation",
    "injectivity probe",
    "brute-force oracles",
];

/// Runs criterion `id` (1-based).
pub fn run(id: u8) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => rank_one_boundary(),
        2 => sheet_law(),
        3 => remark(),
        4 => mass_additivity(),
        5 => metric_axioms(),
        6 => hn_stabilization(),
        7 => massless_invariance(),
        8 => support_invariance(),
        9 => quotient_validation(),
        10 => injectivity(),
        11 => oracles(),
        _ => panic!("no acceptance criterion {id}"),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name: NAMES[id as usize - 1], passed, detail, elapsed }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=11).map(run).collect()
}

pub fn table(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        writeln!(out, "{}", r.line()).expect("String writes");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} criteria passed", results.len()).expect("String writes");
    out
}

type Outcome = gstab_core::Result<(bool, String)>;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn a2() -> CategoryModel {
    CategoryModel::load(ModelId::A2Path).expect("a2_path loads")
}

fn polar(r: f64, phase: f64) -> Complex64 {
    Complex64::from_polar(r, PI * phase)
}

/// Lattice charge taking the given values on the simples of `heart`.
fn charge_on_simples(model: &CategoryModel, heart: HeartRef, values: &[Complex64]) -> Charge {
    let s = model.simples(heart);
    let c: Vec<Vec<f64>> = s.iter().map(|&x| model.class_of_shifted(x).as_f64()).collect();
    let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    let x0 = (values[0] * c[1][1] - values[1] * c[0][1]) / det;
    let x1 = (values[1] * c[0][0] - values[0] * c[1][0]) / det;
    Charge(vec![x0, x1])
}

fn random_sigma(model: &CategoryModel, rng: &mut ChaCha8Rng) -> StabilityCondition {
    let heart = HeartRef::new(rng.gen_range(0..13), rng.gen_range(-3..4));
    let k = heart.shift as f64;
    let values = [
        polar(rng.gen_range(0.05..3.0), k + rng.gen_range(0.01..=1.0)),
        polar(rng.gen_range(0.05..3.0), k + rng.gen_range(0.01..=1.0)),
    ];
    StabilityCondition::from_simple_charges(model, heart, &values).expect("charges chosen inside the window")
}

fn random_object(rng: &mut ChaCha8Rng, max: usize) -> DgObject {
    let n = rng.gen_range(1..=max);
    DgObject::new((0..n).map(|_| Shifted::new(Indec(rng.gen_range(0..3)), rng.gen_range(-3..4))).collect())
}

fn rank_one_boundary() -> Outcome {
    let start = Instant::now();
    let ex = rank_one_example(2, 50, 10, SEED)?;
    let t = start.elapsed().as_secs_f64();
    let passed = ex.passed() && t < 1.0;
    Ok((
        passed,
        format!(
            "{} sheet-sampled collapses in one class: {}; boundary classes over {} random collapses: {}; \
             collapse→(D, zero) {}/{}; interior→(0, limit) {}/{}",
            ex.sheet_sequences,
            ex.sheets_one_class,
            ex.random_collapse,
            ex.boundary_classes,
            ex.collapse_images_ok,
            ex.random_collapse + ex.sheet_sequences,
            ex.interior_images_ok,
            ex.interior
        ),
    ))
}

fn sheet_law() -> Outcome {
    let start = Instant::now();
    let samples = sheet_distance_law();
    let closed = samples.iter().map(|s| (s.exact - 2.0 * s.r).abs()).fold(0.0, f64::max);
    let oracle = samples.iter().map(|s| (s.oracle - s.exact).abs()).fold(0.0, f64::max);
    let t = start.elapsed().as_secs_f64();
    let passed = closed <= 1e-12 && oracle <= 1e-3 && t < 5.0;
    Ok((
        passed,
        format!(
            "{} samples, max |d − 2r| = {closed:.1e}, max |d − oracle| = {oracle:.1e}; \
             DISCREPANCY: stated value |z|, computed and oracle value 2|z|",
            samples.len()
        ),
    ))
}

fn remark() -> Outcome {
    let start = Instant::now();
    let model = a2();
    let ex = remark_default()?;
    let close = |p: Option<f64>, v: f64| p.is_some_and(|p| (p - v).abs() <= 4.0 * f64::EPSILON);
    let s2 = ex.phase_s2 == [Some(1.0), Some(1.0)];
    let s1 = close(ex.phase_s1[0], 0.5) && close(ex.phase_s1[1], 1.0 / 3.0);
    let same = ex.images[0].same_as(&ex.images[1]);
    let kernel = ex.images[0].kernel == model.thick_from_indecs([Indec(0)]);
    let zbar = ex.zbar_s2 == Some(Complex64::new(-1.0, 0.0));
    let t = start.elapsed().as_secs_f64();
    Ok((
        s2 && s1 && ex.equivalent && same && kernel && zbar && t < 1.0,
        format!(
            "φ∞(S2) = {:?}, φ∞(S1) = {:?}, equivalent {}, images identical {}, K = {}, Z̄([S2]) = {:?}",
            ex.phase_s2,
            ex.phase_s1,
            ex.equivalent,
            same,
            ex.kernel_label(&model),
            ex.zbar_s2.map(|z| (z.re, z.im))
        ),
    ))
}

fn mass_additivity() -> Outcome {
    let model = a2();
    let mut rng = rng(4);
    let (mut worst, mut exact, mut failures) = (0.0f64, 0usize, 0usize);
    for _ in 0..1000 {
        let sigma = random_sigma(&model, &mut rng);
        let sl = sigma.slicing(&model)?;
        let (a, b) = (random_object(&mut rng, 3), random_object(&mut rng, 3));
        let (ma, mb, mab) = (sl.mass(&a)?, sl.mass(&b)?, sl.mass(&a.direct_sum(&b))?);
        let rel = (mab - (ma + mb)).abs() / (ma + mb);
        worst = worst.max(rel);
        exact += usize::from(mab == ma + mb);
        let k = rng.gen_range(-3..4);
        let m = |s: &str| sl.mass(&model.object(&[(s, k)]).expect("built-in symbol"));
        let triangle = m("E")? <= (m("S1")? + m("S2")?) * (1.0 + 1e-12);
        if rel > 1e-12 || !triangle {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("1000 cases, {failures} failures; bitwise-equal sums {exact}/1000, max relative deviation {worst:.1e}"),
    ))
}

fn random_cover_point(rng: &mut ChaCha8Rng) -> CoverPoint {
    CoverPoint::new(rng.gen_range(1e-3..3.0), rng.gen_range(-20.0..20.0))
}

fn metric_axioms() -> Outcome {
    let model = a2();
    let space = ChargeSpace::euclidean(&model);
    let mut rng = rng(5);
    let mut failures = Vec::new();
    let mut deck_exact = true;
    for _ in 0..500 {
        let (a, b, c) = (random_sigma(&model, &mut rng), random_sigma(&model, &mut rng), random_sigma(&model, &mut rng));
        let sigma_metrics: [(&str, fn(&CategoryModel, &StabilityCondition, &StabilityCondition) -> gstab_core::Result<f64>); 2] =
            [("bridgeland", bridgeland_distance), ("slicing", slicing_distance)];
        for (name, d) in sigma_metrics {
            let (ab, ba, bc, ac) = (d(&model, &a, &b)?, d(&model, &b, &a)?, d(&model, &b, &c)?, d(&model, &a, &c)?);
            if (ab - ba).abs() > 1e-9 || ac > ab + bc + 1e-9 {
                failures.push(name);
            }
        }
        let dz = |x: &StabilityCondition, y: &StabilityCondition| space.charge_distance(&x.charge, &y.charge);
        if (dz(&a, &b)? - dz(&b, &a)?).abs() > 1e-9 || dz(&a, &c)? > dz(&a, &b)? + dz(&b, &c)? + 1e-9 {
            failures.push("charge");
        }
        let (p, q, r) = (random_cover_point(&mut rng), random_cover_point(&mut rng), random_cover_point(&mut rng));
        let d = cover_distance;
        if (d(&p, &q) - d(&q, &p)).abs() > 1e-9 || d(&p, &r) > d(&p, &q) + d(&q, &r) + 1e-9 {
            failures.push("cover");
        }
        let k = rng.gen_range(-6..7);
        deck_exact &= d(&p.deck(k), &q.deck(k)) == d(&p, &q);
    }
    Ok((
        failures.is_empty() && deck_exact,
        format!("500 triples, failures {failures:?}, deck invariance exact: {deck_exact}"),
    ))
}

/// Random affine `a2_path` sequence. Each simple of the chosen heart is
/// massless with probability `p_massless`; massless simples drift into the
/// heart's half-plane.
fn random_sequence(model: &CategoryModel, rng: &mut ChaCha8Rng, p_massless: f64) -> gstab_core::Result<AffineSequence> {
    let heart = HeartRef::new(rng.gen_range(0..9), rng.gen_range(-2..3));
    let k = heart.shift as f64;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for _ in 0..2 {
        if rng.gen_bool(p_massless) {
            a.push(Complex64::new(0.0, 0.0));
            b.push(polar(rng.gen_range(0.2..2.0), k + rng.gen_range(0.02..0.98)));
        } else {
            a.push(polar(rng.gen_range(0.2..2.0), k + rng.gen_range(0.02..1.0)));
            b.push(Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    AffineSequence::new(model, heart, charge_on_simples(model, heart, &a), charge_on_simples(model, heart, &b), None)
}

/// A random sequence with the limiting support property.
fn supported_sequence(model: &CategoryModel, rng: &mut ChaCha8Rng, form: &QuadraticForm) -> gstab_core::Result<AffineSequence> {
    loop {
        let s = random_sequence(model, rng, 0.3)?;
        if limiting_support(model, &s, form)?.holds {
            return Ok(s);
        }
    }
}

fn hn_objects(hn: &gstab_core::HnFiltration) -> Vec<DgObject> {
    hn.factors.iter().map(|f| f.object.clone()).collect()
}

fn hn_stabilization() -> Outcome {
    let model = a2();
    let form = QuadraticForm::euclidean(2);
    let mut rng = rng(6);
    let mut failures = 0;
    let mut max_ne = 0u64;
    for _ in 0..200 {
        let s = supported_sequence(&model, &mut rng, &form)?;
        let mut objects: Vec<DgObject> =
            model.indecs().map(|x| DgObject::single(Shifted::new(x, 0))).collect();
        objects.push(random_object(&mut rng, 3));
        for obj in &objects {
            let ok = (|| -> gstab_core::Result<bool> {
                let hn = stabilized_hn(&model, &s, obj)?;
                max_ne = max_ne.max(hn.n_e);
                let at = |n: u64| -> gstab_core::Result<Vec<DgObject>> {
                    Ok(hn_objects(&s.evaluate(n.max(s.n0()))?.slicing(&model)?.hn_filtration(obj)?))
                };
                let (early, late) = (at(hn.n_e + 1)?, at(1_000_000)?);
                Ok(early == late && early == hn.objects())
            })();
            if !matches!(ok, Ok(true)) {
                failures += 1;
            }
        }
    }
    Ok((failures == 0, format!("200 sequences × 4 objects, {failures} failures, largest N_E {max_ne}")))
}

/// Equivalent partner of `s`: fresh drifts on every simple, and with
/// probability ½ a simple tilt at a massless simple.
fn partner(model: &CategoryModel, rng: &mut ChaCha8Rng, s: &AffineSequence) -> gstab_core::Result<Option<AffineSequence>> {
    let mut heart = s.heart();
    let massless: Vec<usize> = model
        .simples(heart)
        .iter()
        .enumerate()
        .filter(|(_, &x)| s.a().eval(&model.class_of_shifted(x)).norm() == 0.0)
        .map(|(j, _)| j)
        .collect();
    if !massless.is_empty() && rng.gen_bool(0.5) {
        let j = massless[rng.gen_range(0..massless.len())];
        if let Some((idx, delta)) = model.tilt(heart.heart, j, rng.gen_bool(0.5)) {
            heart = HeartRef::new(idx, heart.shift - delta);
        }
    }
    let k = heart.shift as f64;
    let mut b = Vec::new();
    for &x in model.simples(heart) {
        let c = model.class_of_shifted(x);
        if s.a().eval(&c).norm() == 0.0 {
            b.push(polar(rng.gen_range(0.2..2.0), k + rng.gen_range(0.02..0.98)));
        } else {
            b.push(Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    let b = charge_on_simples(model, heart, &b);
    match AffineSequence::new(model, heart, s.a().clone(), b, None) {
        Ok(t) => Ok(Some(t)),
        Err(gstab_core::Error::NeverValid) => Ok(None),
        Err(e) => Err(e),
    }
}

/// 100 random equivalent pairs, each with the limiting support property.
fn equivalent_pairs(salt: u64) -> gstab_core::Result<(Vec<(AffineSequence, AffineSequence)>, usize)> {
    let model = a2();
    let form = QuadraticForm::euclidean(2);
    let mut rng = rng(salt);
    let mut pairs = Vec::new();
    let mut rejected = 0;
    while pairs.len() < 100 {
        let s = loop {
            let s = random_sequence(&model, &mut rng, 0.4)?;
            if limiting_support(&model, &s, &form)?.holds && !massless_subcategory(&model, &s)?.is_zero() {
                break s;
            }
        };
        match partner(&model, &mut rng, &s)? {
            Some(t) if equivalent(&model, &s, &t)? => pairs.push((s, t)),
            _ => rejected += 1,
        }
    }
    Ok((pairs, rejected))
}

const PAIR_SALT: u64 = 7;

fn massless_invariance() -> Outcome {
    let model = a2();
    let (pairs, rejected) = equivalent_pairs(PAIR_SALT)?;
    let mut failures = 0;
    for (s, t) in &pairs {
        let (ks, kt) = (massless_subcategory(&model, s)?, massless_subcategory(&model, t)?);
        let members: Vec<DgObject> = ks.members().map(|x| DgObject::single(Shifted::new(x, 0))).collect();
        let closed = model.thick_lattice().contains(&ks)
            && model.thick_closure(&members) == ks
            && model
                .rotated_triangles()
                .iter()
                .all(|t| t.iter().filter(|x| ks.contains_indec(x.indec)).count() != 2);
        if ks != kt || !closed {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("100 pairs ({rejected} non-equivalent candidates redrawn), {failures} failures")))
}

fn support_invariance() -> Outcome {
    let model = a2();
    let form = QuadraticForm::euclidean(2);
    let (pairs, _) = equivalent_pairs(PAIR_SALT)?;
    let mut failures = 0;
    let mut worst = 0.0f64;
    let mut example = None;
    for (s, t) in &pairs {
        let (c, d) = (limiting_support(&model, s, &form)?.c, limiting_support(&model, t, &form)?.c);
        let gap = if c == d { 0.0 } else { (c - d).abs() };
        worst = worst.max(gap);
        if !(gap < 1e-9) {
            failures += 1;
            example.get_or_insert((c, d));
        }
    }
    let mut detail = format!("100 pairs, {failures} with |C − C′| ≥ 1e-9, max gap {worst:.3e}");
    if let Some((c, d)) = example {
        write!(detail, "; first: C = {c:.6}, C′ = {d:.6}").expect("String writes");
    }
    Ok((failures == 0, detail))
}

/// Checks a `j`-image whose kernel is proper and nonzero. `None` when the
/// kernel is zero or everything.
fn validate_image(model: &CategoryModel, form: &QuadraticForm, img: &JImage) -> gstab_core::Result<Option<bool>> {
    let k = img.image.kernel;
    if k.is_zero() || k == model.whole() {
        return Ok(None);
    }
    let q = model.quotient(k)?;
    let Some(sigma) = &img.image.quotient else { return Ok(Some(false)) };
    let mut ok = sigma.validate(&q.model).is_ok();
    let sl = sigma.slicing(&q.model)?;
    for x in q.model.indecs() {
        for sh in -2..=2 {
            ok &= sl.hn_filtration(&DgObject::single(Shifted::new(x, sh))).is_ok();
        }
    }
    let qf = quotient_form(model, &q, form)?;
    ok &= support_constant(&q.model, sigma, &qf)? >= img.limiting_support.c - 1e-9;
    for x in model.indecs() {
        let c = model.class_of_indec(x);
        ok &= qf.norm_class(&q.project(&c)) <= form.norm_class(&c) + 1e-12;
    }
    Ok(Some(ok))
}

fn quotient_validation() -> Outcome {
    let model = a2();
    let form = QuadraticForm::euclidean(2);
    let (pairs, _) = equivalent_pairs(PAIR_SALT)?;
    let mut rng = rng(9);
    let mut seqs: Vec<AffineSequence> = pairs.into_iter().flat_map(|(s, t)| [s, t]).collect();
    for _ in 0..100 {
        seqs.push(supported_sequence(&model, &mut rng, &form)?);
    }
    let (mut checked, mut failures) = (0, 0);
    for s in &seqs {
        match j_map(&model, s, &form).and_then(|img| validate_image(&model, &form, &img)) {
            Ok(Some(ok)) => {
                checked += 1;
                failures += usize::from(!ok);
            }
            Ok(None) => {}
            Err(_) => failures += 1,
        }
    }
    Ok((failures == 0, format!("{} sequences, {checked} proper nonzero kernels checked, {failures} failures", seqs.len())))
}

/// Fixed corpus of 30 sequences over both models.
pub fn injectivity_corpus() -> gstab_core::Result<Vec<(CategoryModel, AffineSequence)>> {
    let a1 = CategoryModel::load(ModelId::A1Cyn(2))?;
    let a2 = a2();
    let c = Complex64::new;
    let zero = c(0.0, 0.0);
    let mut out = Vec::new();
    let mut push1 = |h: i32, a: Complex64, b: Complex64| -> gstab_core::Result<()> {
        let s = AffineSequence::new(&a1, HeartRef::standard(h), Charge(vec![a]), Charge(vec![b]), None)?;
        out.push((a1.clone(), s));
        Ok(())
    };
    // Collapses on several sheets.
    push1(0, zero, c(-1.0, 0.0))?;
    push1(2, zero, c(-0.5, 0.0))?;
    push1(-3, zero, c(0.0, -2.0))?;
    push1(5, zero, c(1.0, -1.0))?;
    // Interior limits, two of them equivalent.
    push1(0, c(-1.0, 0.0), c(0.0, 0.5))?;
    push1(0, c(-1.0, 0.0), c(0.3, 0.1))?;
    push1(2, c(-1.0, 0.0), c(0.0, 0.5))?;
    push1(0, c(-2.0, 0.0), c(0.0, 0.5))?;
    push1(1, c(0.3, -0.7), c(0.0, 0.0))?;
    push1(-1, c(0.3, -0.7), c(-0.2, 0.0))?;
    push1(0, c(0.0, 1.0), c(1.0, 1.0))?;
    push1(4, c(0.0, 1.0), c(1.0, 1.0))?;
    let mut push2 = |h: HeartRef, a: [Complex64; 2], b: [Complex64; 2]| -> gstab_core::Result<()> {
        let (a, b) = (charge_on_simples(&a2, h, &a), charge_on_simples(&a2, h, &b));
        out.push((a2.clone(), AffineSequence::new(&a2, h, a, b, None)?));
        Ok(())
    };
    let std = HeartRef::standard(0);
    // Different limit slicings, same limit.
    push2(std, [zero, c(-1.0, 0.0)], [c(0.0, 1.0), zero])?;
    push2(std, [zero, c(-1.0, 0.0)], [polar(1.0, 1.0 / 3.0), zero])?;
    push2(std, [zero, c(-1.0, 0.0)], [polar(2.0, 0.9), c(0.0, 0.3)])?;
    // Same massless simple approached from the tilted heart `S1[1]|S2`.
    push2(HeartRef::new(1, 0), [zero, c(-1.0, 0.0)], [polar(1.0, 0.5), zero])?;
    push2(std, [zero, c(-2.0, 0.0)], [c(0.0, 1.0), zero])?;
    push2(std, [zero, c(0.0, 1.0)], [c(0.0, 1.0), zero])?;
    // S2 massless.
    push2(std, [c(-1.0, 0.0), zero], [zero, c(0.0, 1.0)])?;
    push2(std, [c(-1.0, 0.0), zero], [c(0.1, 0.1), polar(0.5, 0.25)])?;
    push2(std, [polar(1.0, 0.25), zero], [zero, c(0.0, 1.0)])?;
    // Nothing massless.
    push2(std, [c(0.0, 1.0), c(-1.0, 0.0)], [c(0.1, 0.0), zero])?;
    push2(std, [c(0.0, 1.0), c(-1.0, 0.0)], [c(-0.3, 0.2), c(0.2, 0.2)])?;
    push2(std, [c(-1.0, 0.0), c(0.0, 1.0)], [zero, zero])?;
    push2(std, [c(-1.0, 0.0), c(0.0, 1.5)], [zero, zero])?;
    push2(HeartRef::standard(1), [c(0.0, -1.0), c(1.0, 0.0)], [zero, zero])?;
    // Total collapse.
    push2(std, [zero, zero], [c(0.0, 1.0), c(-1.0, 0.0)])?;
    push2(std, [zero, zero], [polar(1.0, 0.3), polar(2.0, 0.7)])?;
    push2(HeartRef::standard(2), [zero, zero], [c(0.0, 1.0), c(-1.0, 0.0)])?;
    push2(HeartRef::new(2, -1), [zero, c(0.5, -0.5)], [polar(1.0, -0.5), zero])?;
    Ok(out)
}

fn injectivity() -> Outcome {
    let corpus = injectivity_corpus()?;
    let forms: Vec<QuadraticForm> = corpus.iter().map(|(m, _)| QuadraticForm::euclidean(m.rank())).collect();
    let items: Vec<(&CategoryModel, &AffineSequence, &QuadraticForm)> =
        corpus.iter().zip(&forms).map(|((m, s), f)| (m, s, f)).collect();
    let report = injectivity_probe(&items)?;
    Ok((
        corpus.len() == 30 && report.counterexamples.is_empty(),
        format!(
            "{} sequences, {} classes, {} counterexamples",
            corpus.len(),
            report.classes.len(),
            report.counterexamples.len()
        ),
    ))
}

fn random_std_sigma(rng: &mut ChaCha8Rng) -> (StdSigma, StabilityCondition) {
    let k = rng.gen_range(-3..4);
    let z = [
        polar(rng.gen_range(0.05..3.0), rng.gen_range(0.01..=1.0)),
        polar(rng.gen_range(0.05..3.0), rng.gen_range(0.01..=1.0)),
    ];
    // Catalog simples sit in degree 0; the window moves with their charges.
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let z = z.map(|v| v * sign);
    let sigma = StabilityCondition::new(ModelId::A2Path, Charge(z.to_vec()), HeartRef::standard(k));
    (StdSigma { z, k }, sigma)
}

/// Object with at most two summands of each kind per degree, so every
/// degree fits the oracle's dimension bound.
fn oracle_object(rng: &mut ChaCha8Rng) -> DgObject {
    loop {
        let obj = random_object(rng, 5);
        let fits = (-3..4).all(|d| {
            let count = |i: u8| obj.summands().iter().filter(|s| s.shift == d && s.indec.0 == i).count();
            count(0) + count(2) <= 4 && count(1) + count(2) <= 4
        });
        if fits {
            return obj;
        }
    }
}

fn small_objects(rng: &mut ChaCha8Rng) -> Vec<DgObject> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut v = Vec::new();
                v.extend(std::iter::repeat_n(Shifted::new(Indec(0), 0), a));
                v.extend(std::iter::repeat_n(Shifted::new(Indec(1), 0), b));
                v.extend(std::iter::repeat_n(Shifted::new(Indec(2), 0), c));
                if !v.is_empty() {
                    out.push(DgObject::new(v));
                }
            }
        }
    }
    out.extend((0..10).map(|_| oracle_object(rng)));
    out
}

fn oracles() -> Outcome {
    let model = a2();
    let mut rng = rng(11);
    let mut hn_failures = 0;
    for _ in 0..1000 {
        let (std, sigma) = random_std_sigma(&mut rng);
        let obj = oracle_object(&mut rng);
        let expected = hn_oracle(std.z, std.k, &obj);
        let got = sigma.slicing(&model).and_then(|sl| sl.hn_filtration(&obj));
        let same = match (expected, got) {
            (Some(e), Ok(g)) => {
                e.len() == g.factors.len()
                    && e.iter().zip(&g.factors).all(|(e, g)| {
                        let c = model.class_of(&g.object);
                        c.0 == e.class && (e.phase - g.phase).abs() <= 1e-12
                    })
            }
            _ => false,
        };
        hn_failures += usize::from(!same);
    }
    let mut reduction_failures = 0;
    let form = QuadraticForm::euclidean(2);
    for _ in 0..500 {
        let ((sa, a), (sb, b)) = (random_std_sigma(&mut rng), random_std_sigma(&mut rng));
        let u = Charge(vec![
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        ]);
        let objects = small_objects(&mut rng);
        let Some(bf) = brute_force(sa, sb, &u, &form, &objects) else {
            reduction_failures += 1;
            continue;
        };
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()));
        let ok = close(slicing_distance(&model, &a, &b)?, bf.slicing)
            && close(bridgeland_distance(&model, &a, &b)?, bf.bridgeland)
            && close(sigma_norm(&model, &a, &u)?, bf.norm)
            && close(support_constant(&model, &a, &form)?, bf.support);
        reduction_failures += usize::from(!ok);
    }
    Ok((
        hn_failures == 0 && reduction_failures == 0,
        format!("HN: 1000 cases, {hn_failures} mismatches; reductions: 500 cases, {reduction_failures} mismatches"),
    ))
}
