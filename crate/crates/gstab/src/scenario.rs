//! Scenario files: named conditions and sequences plus a list of analyses,
//! executed in declaration order into one JSON report and an optional CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use gstab_core::completion::{
    injectivity_probe, is_pi_local, j_map, limit_mass, limiting_phase, limiting_support, massless_subcategory,
    stabilized_hn, AffineSequence, CauchySequence, LocalityWitness,
};
use gstab_core::geometry::{stab_distance, ChargeSpace, CoverPoint};
use gstab_core::stability::{bridgeland_distance, slicing_distance, support_constant};
use gstab_core::{CategoryModel, Complex64, DgObject, ModelId, QuadraticForm, StabilityCondition};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::InputError;
use crate::io::{
    charge_json, complex_json, condition_from, fmt_f64, heart_json, j_image_json, num, object_from,
    object_json, sequence_from, thick_json, to_json_string, ConditionDto, ObjectDto, SequenceDto,
};
use crate::reproduce::{rank_one_example, remark_example};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub model: String,
    /// Gram matrix of the norm on the lattice of `model`; Euclidean if absent.
    #[serde(default)]
    pub norm: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub conditions: Vec<NamedCondition>,
    #[serde(default)]
    pub sequences: Vec<NamedSequence>,
    pub analyses: Vec<Analysis>,
    #[serde(default)]
    pub output: OutputPaths,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NamedCondition {
    pub name: String,
    #[serde(flatten)]
    pub condition: ConditionDto,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NamedSequence {
    pub name: String,
    #[serde(flatten)]
    pub sequence: SequenceDto,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Distance intervals wider than this are flagged as gaps.
    pub distance_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { distance_gap: 1e-6 }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Analysis {
    Hn {
        condition: String,
        object: ObjectDto,
    },
    Mass {
        condition: String,
        object: ObjectDto,
    },
    /// All pairs of the listed conditions, or of every condition if empty.
    Distances {
        #[serde(default)]
        conditions: Vec<String>,
    },
    KSigma {
        sequence: String,
    },
    /// Limiting support of a sequence, or the support constant of a condition.
    Support {
        #[serde(default)]
        sequence: Option<String>,
        #[serde(default)]
        condition: Option<String>,
    },
    J {
        sequence: String,
    },
    Injectivity {
        #[serde(default)]
        sequences: Vec<String>,
    },
    StabilizedHn {
        sequence: String,
        object: ObjectDto,
    },
    ExampleA1 {
        #[serde(default = "default_cy")]
        cy: u32,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default)]
        seed: u64,
    },
    ExampleA2Remark {
        #[serde(default)]
        z: Option<[[f64; 2]; 2]>,
    },
    MassProfile {
        sequence: String,
        object: ObjectDto,
        #[serde(default)]
        n: Vec<u64>,
    },
}

fn default_cy() -> u32 {
    2
}

fn default_samples() -> usize {
    50
}

impl Analysis {
    pub fn kind(&self) -> &'static str {
        match self {
            Analysis::Hn { .. } => "hn",
            Analysis::Mass { .. } => "mass",
            Analysis::Distances { .. } => "distances",
            Analysis::KSigma { .. } => "k_sigma",
            Analysis::Support { .. } => "support",
            Analysis::J { .. } => "j",
            Analysis::Injectivity { .. } => "injectivity",
            Analysis::StabilizedHn { .. } => "stabilized_hn",
            Analysis::ExampleA1 { .. } => "example_a1",
            Analysis::ExampleA2Remark { .. } => "example_a2_remark",
            Analysis::MassProfile { .. } => "mass_profile",
        }
    }
}

/// One CSV line. Columns: `analysis` (index in the scenario), `kind`,
/// `series` (what is measured, with its arguments), `n` (sequence index,
/// empty when not applicable), `value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub analysis: usize,
    pub kind: &'static str,
    pub series: String,
    pub n: Option<u64>,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub rows: Vec<CsvRow>,
    /// 0 when every analysis succeeded, 1 otherwise.
    pub exit_code: i32,
}

impl Outcome {
    pub fn report_string(&self) -> String {
        to_json_string(&self.report)
    }

    pub fn csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("in-memory CSV writes cannot fail");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV of UTF-8 fields")
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
}

/// Models and resolved names of a scenario.
struct Context {
    model: CategoryModel,
    form: QuadraticForm,
    others: BTreeMap<ModelId, CategoryModel>,
    conditions: BTreeMap<String, StabilityCondition>,
    sequences: BTreeMap<String, (ModelId, Result<CauchySequence, gstab_core::Error>)>,
    /// Declaration order of sequence names.
    sequence_order: Vec<String>,
    condition_order: Vec<String>,
    tolerances: Tolerances,
}

impl Context {
    fn model_for(&self, id: ModelId) -> &CategoryModel {
        if id == self.model.id() {
            &self.model
        } else {
            &self.others[&id]
        }
    }

    fn form_for(&self, id: ModelId) -> QuadraticForm {
        if id == self.model.id() {
            self.form.clone()
        } else {
            QuadraticForm::euclidean(self.model_for(id).rank())
        }
    }

    fn condition(&self, name: &str) -> &StabilityCondition {
        &self.conditions[name]
    }

    fn affine(&self, name: &str) -> Result<(&CategoryModel, &AffineSequence), gstab_core::Error> {
        let (id, seq) = &self.sequences[name];
        let seq = seq.as_ref().map_err(Clone::clone)?;
        Ok((self.model_for(*id), seq.as_affine()?))
    }
}

fn parse_model(s: &str) -> Result<CategoryModel, InputError> {
    let id = ModelId::parse(s).map_err(|e| InputError::Parse(e.to_string()))?;
    CategoryModel::load(id).map_err(|e| InputError::Parse(e.to_string()))
}

fn unique<'a>(what: &str, names: impl Iterator<Item = &'a String>) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(InputError::Parse(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(())
}

fn resolve(s: &Scenario) -> Result<Context, InputError> {
    let model = parse_model(&s.model)?;
    let form = match &s.norm {
        None => QuadraticForm::euclidean(model.rank()),
        Some(rows) => QuadraticForm::from_rows(rows).map_err(|e| InputError::Parse(format!("norm: {e}")))?,
    };
    if form.dim() != model.rank() {
        return Err(InputError::Parse(format!("norm has dimension {}, model rank is {}", form.dim(), model.rank())));
    }
    unique("condition", s.conditions.iter().map(|c| &c.name))?;
    unique("sequence", s.sequences.iter().map(|c| &c.name))?;
    let mut others = BTreeMap::new();
    let mut conditions = BTreeMap::new();
    for c in &s.conditions {
        conditions.insert(c.name.clone(), condition_from(&model, &c.condition)?);
    }
    let mut sequences = BTreeMap::new();
    for n in &s.sequences {
        let id = match n.sequence.model() {
            None => model.id(),
            Some(m) => ModelId::parse(m).map_err(|e| InputError::Parse(e.to_string()))?,
        };
        if id != model.id() && !others.contains_key(&id) {
            others.insert(id, CategoryModel::load(id).map_err(|e| InputError::Parse(e.to_string()))?);
        }
        let m = if id == model.id() { &model } else { &others[&id] };
        sequences.insert(n.name.clone(), (id, sequence_from(m, &n.sequence)?));
    }
    let ctx = Context {
        model,
        form,
        others,
        conditions,
        sequences,
        sequence_order: s.sequences.iter().map(|n| n.name.clone()).collect(),
        condition_order: s.conditions.iter().map(|n| n.name.clone()).collect(),
        tolerances: s.tolerances,
    };
    for (i, a) in s.analyses.iter().enumerate() {
        check_references(&ctx, a).map_err(|e| match e {
            InputError::Reference(msg) => InputError::Reference(format!("analysis {i} ({}): {msg}", a.kind())),
            other => other,
        })?;
    }
    Ok(ctx)
}

fn check_references(ctx: &Context, a: &Analysis) -> Result<(), InputError> {
    let cond = |n: &String| {
        if ctx.conditions.contains_key(n) {
            Ok(())
        } else {
            Err(InputError::Reference(format!("unknown condition {n:?}")))
        }
    };
    let seq = |n: &String| {
        if ctx.sequences.contains_key(n) {
            Ok(())
        } else {
            Err(InputError::Reference(format!("unknown sequence {n:?}")))
        }
    };
    let seq_object = |n: &String, o: &ObjectDto| {
        seq(n)?;
        object_from(ctx.model_for(ctx.sequences[n].0), o).map(|_| ())
    };
    match a {
        Analysis::Hn { condition, object } | Analysis::Mass { condition, object } => {
            cond(condition)?;
            object_from(&ctx.model, object).map(|_| ())
        }
        Analysis::Distances { conditions } => conditions.iter().try_for_each(cond),
        Analysis::KSigma { sequence } | Analysis::J { sequence } => seq(sequence),
        Analysis::Support { sequence, condition } => match (sequence, condition) {
            (Some(s), None) => seq(s),
            (None, Some(c)) => cond(c),
            _ => Err(InputError::Parse("support needs exactly one of sequence, condition".into())),
        },
        Analysis::Injectivity { sequences } => sequences.iter().try_for_each(seq),
        Analysis::StabilizedHn { sequence, object } | Analysis::MassProfile { sequence, object, .. } => {
            seq_object(sequence, object)
        }
        Analysis::ExampleA1 { cy, .. } => {
            if *cy < 2 {
                Err(InputError::Parse(format!("example_a1 needs cy ≥ 2, got {cy}")))
            } else {
                Ok(())
            }
        }
        Analysis::ExampleA2Remark { .. } => Ok(()),
    }
}

/// Runs every analysis. Input errors abort before anything runs; analysis
/// errors are recorded and the remaining analyses still run.
pub fn run_scenario(s: &Scenario) -> Result<Outcome, InputError> {
    let ctx = resolve(s)?;
    let mut results = Vec::with_capacity(s.analyses.len());
    let mut rows = Vec::new();
    let mut discrepancies = Vec::new();
    let mut failed = false;
    for (i, a) in s.analyses.iter().enumerate() {
        let mut sink = Sink { index: i, kind: a.kind(), rows: Vec::new(), discrepancies: Vec::new() };
        let entry = match run_one(&ctx, a, &mut sink) {
            Ok(result) => {
                rows.append(&mut sink.rows);
                discrepancies.append(&mut sink.discrepancies);
                json!({ "index": i, "kind": a.kind(), "status": "ok", "result": result })
            }
            Err(e) => {
                failed = true;
                json!({ "index": i, "kind": a.kind(), "status": "error", "error": e.to_string() })
            }
        };
        results.push(entry);
    }
    let report = json!({
        "model": ctx.model.id().to_string(),
        "analyses": results,
        "discrepancies": discrepancies,
        "failed": failed,
    });
    Ok(Outcome { report, rows, exit_code: i32::from(failed) })
}

struct Sink {
    index: usize,
    kind: &'static str,
    rows: Vec<CsvRow>,
    discrepancies: Vec<Value>,
}

impl Sink {
    fn row(&mut self, series: String, n: Option<u64>, value: f64) {
        self.rows.push(CsvRow { analysis: self.index, kind: self.kind, series, n, value: fmt_f64(value) });
    }
}

type AnalysisResult = Result<Value, gstab_core::Error>;

fn run_one(ctx: &Context, a: &Analysis, sink: &mut Sink) -> AnalysisResult {
    let model = &ctx.model;
    match a {
        Analysis::Hn { condition, object } => {
            let sigma = ctx.condition(condition);
            let obj = object_from(model, object).expect("checked");
            let hn = sigma.slicing(model)?.hn_filtration(&obj)?;
            let factors: Vec<Value> = hn
                .factors
                .iter()
                .map(|f| json!({ "object": object_json(model, &f.object), "phase": num(f.phase) }))
                .collect();
            Ok(json!({ "condition": condition, "object": object_json(model, &obj), "factors": factors }))
        }
        Analysis::Mass { condition, object } => {
            let sigma = ctx.condition(condition);
            let obj = object_from(model, object).expect("checked");
            let sl = sigma.slicing(model)?;
            let (hi, lo) = sl.phases(&obj)?;
            let mass = sl.mass(&obj)?;
            sink.row(format!("mass({condition},{})", model.object_name(&obj)), None, mass);
            Ok(json!({ "condition": condition, "mass": num(mass), "phase_max": num(hi), "phase_min": num(lo) }))
        }
        Analysis::Distances { conditions } => distances(ctx, conditions, sink),
        Analysis::KSigma { sequence } => {
            let (m, s) = ctx.affine(sequence)?;
            let k = massless_subcategory(m, s)?;
            Ok(json!({ "sequence": sequence, "K": thick_json(m, k), "label": m.thick_label(k) }))
        }
        Analysis::Support { sequence: Some(name), .. } => {
            let (m, s) = ctx.affine(name)?;
            let ls = limiting_support(m, s, &ctx.form_for(m.id()))?;
            sink.row(format!("limiting_support({name})"), None, ls.c);
            Ok(json!({ "sequence": name, "C": num(ls.c), "holds": ls.holds }))
        }
        Analysis::Support { condition: Some(name), .. } => {
            let c = support_constant(model, ctx.condition(name), &ctx.form)?;
            sink.row(format!("support_constant({name})"), None, c);
            Ok(json!({ "condition": name, "C": num(c) }))
        }
        Analysis::Support { .. } => unreachable!("checked during resolution"),
        Analysis::J { sequence } => {
            let (m, s) = ctx.affine(sequence)?;
            let locality = is_pi_local(m, &CauchySequence::Affine(s.clone()))?;
            let img = j_map(m, s, &ctx.form_for(m.id()))?;
            Ok(json!({
                "sequence": sequence,
                "pi_local": locality.local,
                "witness": locality.witness.map(|w| witness_json(m, w)),
                "image": j_image_json(m, &img.image),
                "limiting_support": num(img.limiting_support.c),
                "quotient_support": num(img.quotient_support),
                "serre_checked": img.serre_checked,
            }))
        }
        Analysis::Injectivity { sequences } => injectivity(ctx, sequences),
        Analysis::StabilizedHn { sequence, object } => {
            let (m, s) = ctx.affine(sequence)?;
            let obj = object_from(m, object).expect("checked");
            let hn = stabilized_hn(m, s, &obj)?;
            let factors: Vec<Value> = hn
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "object": object_json(m, &f.object),
                        "limit_phase": num(f.limit_phase),
                        "limit_charge": complex_json(f.limit_charge),
                        "massless": f.is_massless(),
                    })
                })
                .collect();
            Ok(json!({
                "sequence": sequence,
                "N_E": hn.n_e,
                "factors": factors,
                "limiting_phase": limiting_phase(m, s, &obj)?.map(num),
                "limit_mass": num(limit_mass(m, s, &obj)?),
            }))
        }
        Analysis::ExampleA1 { cy, samples, seed } => {
            let ex = rank_one_example(*cy, *samples, 10, *seed)?;
            sink.discrepancies.push(sheet_discrepancy(ex.sheet_distance, ex.sheet_distance_oracle));
            Ok(json!({
                "model": ex.model.to_string(),
                "boundary_class_count": ex.boundary_classes,
                "random_collapse_sequences": ex.random_collapse,
                "sheet_sequences": ex.sheet_sequences,
                "sheets_one_class": ex.sheets_one_class,
                "collapse_images_whole_zero": ex.collapse_images_ok,
                "interior_sequences": ex.interior,
                "interior_images_zero_limit": ex.interior_images_ok,
                "sheet_distance": num(ex.sheet_distance),
                "sheet_distance_oracle": num(ex.sheet_distance_oracle),
                "passed": ex.passed(),
            }))
        }
        Analysis::ExampleA2Remark { z } => {
            let [z, w] = z.map_or([Complex64::new(0.0, 1.0), Complex64::from_polar(1.0, PI / 3.0)], |v| {
                v.map(|[re, im]| Complex64::new(re, im))
            });
            let ex = remark_example(z, w)?;
            let a2 = CategoryModel::load(ModelId::A2Path)?;
            let opt = |p: Option<f64>| p.map(num);
            Ok(json!({
                "z": [complex_json(z), complex_json(w)],
                "limiting_phase_S2": ex.phase_s2.map(opt),
                "limiting_phase_S1": ex.phase_s1.map(opt),
                "limiting_slicings_differ": ex.phase_s1[0] != ex.phase_s1[1],
                "equivalent": ex.equivalent,
                "images": ex.images.iter().map(|g| j_image_json(&a2, g)).collect::<Vec<_>>(),
                "images_identical": ex.images[0].same_as(&ex.images[1]),
                "K": ex.kernel_label(&a2),
                "zbar_S2": ex.zbar_s2.map(complex_json),
            }))
        }
        Analysis::MassProfile { sequence, object, n } => mass_profile(ctx, sequence, object, n, sink),
    }
}

fn witness_json(model: &CategoryModel, w: LocalityWitness) -> Value {
    match w {
        LocalityWitness::Tile(p) => json!({ "tile": cover_point_json(&p) }),
        LocalityWitness::Chamber(h) => json!({ "chamber": heart_json(model, h) }),
    }
}

fn cover_point_json(p: &CoverPoint) -> Value {
    json!({ "r": num(p.r()), "theta": num(p.theta()) })
}

fn sheet_discrepancy(exact: f64, oracle: f64) -> Value {
    json!({
        "quantity": "distance between (|z|, θ) and (|z|, θ + 2πk), k ≠ 0, at |z| = 1",
        "stated": "|z|",
        "stated_value": num(1.0),
        "computed": "2|z|",
        "computed_value": num(exact),
        "oracle_value": num(oracle),
        "note": "a path between the two lifts must reach the puncture and return",
    })
}

fn distances(ctx: &Context, names: &[String], sink: &mut Sink) -> AnalysisResult {
    let model = &ctx.model;
    let names: Vec<&String> = if names.is_empty() { ctx.condition_order.iter().collect() } else { names.iter().collect() };
    let space = ChargeSpace::new(model, ctx.form.clone())?;
    let mut pairs = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let (s, t) = (ctx.condition(a), ctx.condition(b));
            let slicing = slicing_distance(model, s, t)?;
            let bridgeland = bridgeland_distance(model, s, t)?;
            let charge = space.charge_distance(&s.charge, &t.charge)?;
            let stab = stab_distance(model, &space, s, t)?;
            let gap = stab.upper - stab.lower > ctx.tolerances.distance_gap;
            let tag = format!("{a},{b}");
            sink.row(format!("slicing({tag})"), None, slicing);
            sink.row(format!("bridgeland({tag})"), None, bridgeland);
            sink.row(format!("charge({tag})"), None, charge);
            sink.row(format!("stab_lower({tag})"), None, stab.lower);
            sink.row(format!("stab_upper({tag})"), None, stab.upper);
            pairs.push(json!({
                "pair": [a, b],
                "slicing": num(slicing),
                "bridgeland": num(bridgeland),
                "charge": num(charge),
                "stab": { "lower": num(stab.lower), "upper": num(stab.upper), "gap": gap },
            }));
        }
    }
    Ok(json!({ "pairs": pairs }))
}

fn injectivity(ctx: &Context, names: &[String]) -> AnalysisResult {
    let names: Vec<&String> = if names.is_empty() { ctx.sequence_order.iter().collect() } else { names.iter().collect() };
    let mut items = Vec::with_capacity(names.len());
    let mut forms = Vec::with_capacity(names.len());
    for n in &names {
        let (m, _) = ctx.affine(n)?;
        forms.push(ctx.form_for(m.id()));
    }
    for (n, f) in names.iter().zip(&forms) {
        let (m, s) = ctx.affine(n)?;
        items.push((m, s, f));
    }
    let report = injectivity_probe(&items)?;
    let label = |i: usize| names[i].clone();
    Ok(json!({
        "classes": report.classes.iter().map(|c| c.iter().map(|&i| label(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "images": report
            .classes
            .iter()
            .zip(&report.images)
            .map(|(c, g)| j_image_json(items[c[0]].0, g))
            .collect::<Vec<_>>(),
        "counterexamples": report
            .counterexamples
            .iter()
            .map(|c| json!({
                "first": label(c.first),
                "second": label(c.second),
                "equivalent": c.equivalent,
                "same_image": c.same_image,
            }))
            .collect::<Vec<_>>(),
    }))
}

fn mass_profile(ctx: &Context, name: &str, object: &ObjectDto, ns: &[u64], sink: &mut Sink) -> AnalysisResult {
    let (m, s) = ctx.affine(name)?;
    let obj: DgObject = object_from(m, object).expect("checked");
    let ns: Vec<u64> = if ns.is_empty() { (1..=100).collect() } else { ns.to_vec() };
    let series = format!("mass({name},{})", m.object_name(&obj));
    let mut samples = Vec::new();
    for &n in ns.iter().filter(|&&n| n >= s.n0()) {
        let mass = s.evaluate(n)?.slicing(m)?.mass(&obj)?;
        sink.row(series.clone(), Some(n), mass);
        samples.push((n, mass));
    }
    // Non-increasing over the second half of the samples.
    let tail = &samples[samples.len() / 2..];
    let monotone_tail = tail.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));
    Ok(json!({
        "sequence": name,
        "object": object_json(m, &obj),
        "n0": s.n0(),
        "samples": samples.iter().map(|&(n, v)| json!([n, num(v)])).collect::<Vec<_>>(),
        "limit_mass": num(limit_mass(m, s, &obj)?),
        "monotone_tail": monotone_tail,
        "A": charge_json(s.a()),
    }))
}

/// Reads a scenario file, runs it and writes the report and CSV. Command
/// line paths override the scenario's `output` block; without a report path
/// the report goes to stdout. Returns the exit code.
pub fn run_file(path: &Path, out: Option<&Path>, csv: Option<&Path>) -> Result<i32, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    let scenario = parse_scenario(&text)?;
    let outcome = run_scenario(&scenario)?;
    let write = |p: &Path, body: &str| {
        std::fs::write(p, body).map_err(|source| InputError::Io { path: p.display().to_string(), source })
    };
    match out.or(scenario.output.report.as_deref()) {
        Some(p) => write(p, &outcome.report_string())?,
        None => print!("{}", outcome.report_string()),
    }
    if let Some(p) = csv.or(scenario.output.csv.as_deref()) {
        write(p, &outcome.csv_string())?;
    }
    for r in outcome.report["analyses"].as_array().into_iter().flatten() {
        if r["status"] == "error" {
            eprintln!("analysis {} ({}) failed: {}", r["index"], r["kind"].as_str().unwrap_or("?"), r["error"]);
        }
    }
    Ok(outcome.exit_code)
}
