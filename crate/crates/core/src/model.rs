//! Finite data models of triangulated categories.
//!
//! Every object of a model is a finite direct sum of shifted indecomposables.
//! A model carries the Grothendieck lattice (identified with `ℤ^rank`), the
//! Hom table, the distinguished triangles coming from short exact sequences of
//! the standard heart, the lattice of thick subcategories and a finite catalog
//! of hearts recorded up to global shift.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::rep::{self, Rep};
use crate::{Error, Result, SHIFT_WINDOW};

/// Identifier of a built-in model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    /// CY-`N` category of the `A₁` Ginzburg algebra, `N ≥ 2`.
    A1Cyn(u32),
    /// `D^b(A₂)` for the quiver `1 → 2`.
    A2Path,
    /// `D^b(k)`: one exceptional object. Arises as a quotient of `a2_path`.
    A1Path,
    /// The zero category.
    Zero,
}

impl ModelId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a2_path" => Ok(ModelId::A2Path),
            "a1_path" => Ok(ModelId::A1Path),
            "zero" => Ok(ModelId::Zero),
            _ => {
                let n = s
                    .strip_prefix("a1_cyn:")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::UnsupportedModel(s.to_string()))?;
                if n < 2 {
                    return Err(Error::UnsupportedModel(s.to_string()));
                }
                Ok(ModelId::A1Cyn(n))
            }
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::A1Cyn(n) => write!(f, "a1_cyn:{n}"),
            ModelId::A2Path => f.write_str("a2_path"),
            ModelId::A1Path => f.write_str("a1_path"),
            ModelId::Zero => f.write_str("zero"),
        }
    }
}

/// Index of an indecomposable in its model's symbol list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indec(pub u8);

/// A shifted indecomposable `X[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shifted {
    pub indec: Indec,
    pub shift: i32,
}

impl Shifted {
    pub const fn new(indec: Indec, shift: i32) -> Self {
        Shifted { indec, shift }
    }

    pub const fn shifted(self, by: i32) -> Self {
        Shifted { indec: self.indec, shift: self.shift + by }
    }
}

/// Element of the Grothendieck lattice `Λ ≅ ℤ^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Class(pub Vec<i64>);

impl Class {
    pub fn zero(rank: usize) -> Self {
        Class(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Class {
        Class(self.0.iter().map(|x| x * k).collect())
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&x| x as f64).collect()
    }
}

impl Add for &Class {
    type Output = Class;
    fn add(self, rhs: &Class) -> Class {
        Class(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Class {
    type Output = Class;
    fn sub(self, rhs: &Class) -> Class {
        Class(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Class {
    type Output = Class;
    fn neg(self) -> Class {
        Class(self.0.iter().map(|a| -a).collect())
    }
}

/// A central charge given by its values on the lattice basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Charge(pub Vec<Complex64>);

impl Charge {
    pub fn zero(rank: usize) -> Self {
        Charge(vec![Complex64::new(0.0, 0.0); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, class: &Class) -> Complex64 {
        debug_assert_eq!(class.0.len(), self.0.len());
        self.0
            .iter()
            .zip(&class.0)
            .fold(Complex64::new(0.0, 0.0), |acc, (z, &n)| acc + z * n as f64)
    }

    /// `self + other · t`
    pub fn affine(&self, other: &Charge, t: f64) -> Charge {
        Charge(self.0.iter().zip(&other.0).map(|(a, b)| a + b * t).collect())
    }

    pub fn sub(&self, other: &Charge) -> Charge {
        Charge(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: Complex64) -> Charge {
        Charge(self.0.iter().map(|z| z * c).collect())
    }

    pub fn max_abs_diff(&self, other: &Charge) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

/// A finite direct sum of shifted indecomposables, kept sorted so that equal
/// objects compare equal. The empty sum is the zero object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DgObject {
    summands: Vec<Shifted>,
}

impl DgObject {
    pub fn zero() -> Self {
        DgObject::default()
    }

    pub fn new(mut summands: Vec<Shifted>) -> Self {
        summands.sort();
        DgObject { summands }
    }

    pub fn single(x: Shifted) -> Self {
        DgObject { summands: vec![x] }
    }

    pub fn summands(&self) -> &[Shifted] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shifted(&self, by: i32) -> Self {
        DgObject { summands: self.summands.iter().map(|s| s.shifted(by)).collect() }
    }

    pub fn direct_sum(&self, other: &DgObject) -> Self {
        let mut v = self.summands.clone();
        v.extend_from_slice(&other.summands);
        DgObject::new(v)
    }
}

/// A node of the thick-subcategory lattice, stored as the set of
/// indecomposables it contains (bit `i` ↔ `Indec(i)`). Shift and summand
/// closure are automatic in this representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThickSubcategory {
    mask: u8,
}

impl ThickSubcategory {
    pub const ZERO: ThickSubcategory = ThickSubcategory { mask: 0 };

    pub fn from_mask(mask: u8) -> Self {
        ThickSubcategory { mask }
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn contains_indec(self, x: Indec) -> bool {
        self.mask & (1 << x.0) != 0
    }

    pub fn contains(self, obj: &DgObject) -> bool {
        obj.summands().iter().all(|s| self.contains_indec(s.indec))
    }

    pub fn is_zero(self) -> bool {
        self.mask == 0
    }

    pub fn members(self) -> impl Iterator<Item = Indec> {
        (0..8u8).filter(move |i| self.mask & (1 << i) != 0).map(Indec)
    }

    pub fn intersect(self, other: ThickSubcategory) -> Self {
        ThickSubcategory { mask: self.mask & other.mask }
    }
}

/// A heart of a bounded t-structure, identified by its simple objects and
/// normalised so the smallest simple shift is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Heart {
    simples: Vec<Shifted>,
}

impl Heart {
    /// Normalises `simples` up to global shift. Returns the heart and the
    /// shift `δ` such that the input equals the normalised simples shifted
    /// by `δ`.
    pub fn normalise(mut simples: Vec<Shifted>) -> (Heart, i32) {
        let delta = simples.iter().map(|s| s.shift).min().unwrap_or(0);
        for s in &mut simples {
            s.shift -= delta;
        }
        simples.sort();
        (Heart { simples }, delta)
    }

    pub fn simples(&self) -> &[Shifted] {
        &self.simples
    }

    fn simple_for(&self, x: Indec) -> Option<usize> {
        self.simples.iter().position(|s| s.indec == x)
    }
}

/// A heart from a model's catalog together with the integer `k` such that the
/// catalog simples have phases in `(k, k+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeartRef {
    pub heart: usize,
    pub shift: i32,
}

impl HeartRef {
    pub const fn new(heart: usize, shift: i32) -> Self {
        HeartRef { heart, shift }
    }

    pub const fn standard(shift: i32) -> Self {
        HeartRef { heart: 0, shift }
    }
}

/// Position of an indecomposable relative to a heart.
///
/// Degrees are relative to the heart: a piece `T[d]` of a heart simple `T`
/// has phase `φ(T) + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Simple { simple: usize, degree: i32 },
    /// The object is the middle term of a triangle `sub → X → quot → sub[1]`
    /// with both ends shifted heart simples, `sub` in degree ≥ `quot`.
    Extension { sub: (usize, i32), quot: (usize, i32) },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HomEntry {
    from: Indec,
    to: Indec,
    shift: i32,
    dim: u32,
}

/// Result of a Verdier quotient: the quotient model, the lattice projection
/// `Λ → Λ/Λ_K` and the images of indecomposables.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub model: CategoryModel,
    pub kernel: ThickSubcategory,
    /// Row-major `rank(quotient) × rank(source)` integer matrix.
    pub projection: Vec<Vec<i64>>,
    images: Vec<Option<Shifted>>,
}

impl Quotient {
    pub fn project(&self, class: &Class) -> Class {
        Class(
            self.projection
                .iter()
                .map(|row| row.iter().zip(&class.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Image of a shifted indecomposable; `None` when it lies in the kernel.
    pub fn image(&self, x: Shifted) -> Option<Shifted> {
        self.images[x.indec.0 as usize].map(|im| im.shifted(x.shift))
    }

    pub fn image_object(&self, obj: &DgObject) -> DgObject {
        DgObject::new(obj.summands().iter().filter_map(|&s| self.image(s)).collect())
    }

    /// A lattice class of the source mapping onto each quotient basis vector.
    pub fn basis_lifts(&self, source: &CategoryModel) -> Vec<Class> {
        let rank_q = self.model.rank();
        (0..rank_q)
            .map(|i| {
                let target: Vec<i64> = (0..rank_q).map(|j| (i == j) as i64).collect();
                source
                    .indecs()
                    .flat_map(|x| [1i64, -1].map(|s| source.class_of_indec(x).scaled(s)))
                    .find(|c| self.project(c).0 == target)
                    .expect("quotient basis vector has an indecomposable lift")
            })
            .collect()
    }
}

/// A finite, exact presentation of a triangulated category.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryModel {
    id: ModelId,
    symbols: Vec<&'static str>,
    classes: Vec<Class>,
    hom: Vec<HomEntry>,
    triangles: Vec<[Indec; 3]>,
    thick: Vec<ThickSubcategory>,
    hearts: Vec<Heart>,
}

const S1: Indec = Indec(0);
const S2: Indec = Indec(1);
const E: Indec = Indec(2);
const S: Indec = Indec(0);

/// Largest relative shift between the two simples of a catalog heart.
pub const MAX_HEART_SPREAD: i32 = SHIFT_WINDOW;

impl CategoryModel {
    /// Builds a model. The `a2_path` Hom table is certified against the
    /// representation oracle before it is returned.
    pub fn load(id: ModelId) -> Result<Self> {
        let model = match id {
            ModelId::A1Cyn(n) if n < 2 => return Err(Error::UnsupportedModel(id.to_string())),
            ModelId::A1Cyn(n) => Self::rank_one(id, Some(n)),
            ModelId::A1Path => Self::rank_one(id, None),
            ModelId::A2Path => Self::a2(),
            ModelId::Zero => CategoryModel {
                id,
                symbols: vec![],
                classes: vec![],
                hom: vec![],
                triangles: vec![],
                thick: vec![ThickSubcategory::ZERO],
                hearts: vec![Heart { simples: vec![] }],
            },
        };
        if id == ModelId::A2Path {
            model.certify_hom_table()?;
        }
        Ok(model)
    }

    pub fn parse_and_load(s: &str) -> Result<Self> {
        Self::load(ModelId::parse(s)?)
    }

    fn rank_one(id: ModelId, cy: Option<u32>) -> Self {
        let mut hom = vec![HomEntry { from: S, to: S, shift: 0, dim: 1 }];
        if let Some(n) = cy {
            hom.push(HomEntry { from: S, to: S, shift: n as i32, dim: 1 });
        }
        CategoryModel {
            id,
            symbols: vec!["S"],
            classes: vec![Class(vec![1])],
            hom,
            triangles: vec![],
            thick: vec![ThickSubcategory::ZERO, ThickSubcategory::from_mask(1)],
            hearts: vec![Heart { simples: vec![Shifted::new(S, 0)] }],
        }
    }

    fn a2() -> Self {
        let h = |from, to, shift| HomEntry { from, to, shift, dim: 1 };
        let hom = vec![
            h(S1, S1, 0),
            h(S2, S2, 0),
            h(E, E, 0),
            h(S2, E, 0),
            h(E, S1, 0),
            h(S1, S2, 1),
        ];
        let mut hearts = Vec::new();
        // The three one-parameter families of simple pairs, standard heart first.
        for m in 0..=MAX_HEART_SPREAD {
            hearts.push(Heart::normalise(vec![Shifted::new(S2, 0), Shifted::new(S1, m)]).0);
        }
        for m in 1..=MAX_HEART_SPREAD {
            hearts.push(Heart::normalise(vec![Shifted::new(E, 0), Shifted::new(S2, m)]).0);
            hearts.push(Heart::normalise(vec![Shifted::new(S1, 0), Shifted::new(E, m)]).0);
        }
        let mut model = CategoryModel {
            id: ModelId::A2Path,
            symbols: vec!["S1", "S2", "E"],
            classes: vec![Class(vec![1, 0]), Class(vec![0, 1]), Class(vec![1, 1])],
            hom,
            triangles: vec![[S2, E, S1]],
            thick: vec![],
            hearts,
        };
        model.thick = model.enumerate_thick();
        model
    }

    fn certify_hom_table(&self) -> Result<()> {
        let reps = [Rep::s1(), Rep::s2(), Rep::e()];
        for x in self.indecs() {
            for y in self.indecs() {
                let (rx, ry) = (&reps[x.0 as usize], &reps[y.0 as usize]);
                for k in -SHIFT_WINDOW..=SHIFT_WINDOW {
                    let oracle = match k {
                        0 => rep::hom_dim(rx, ry),
                        1 => rep::ext_dim(rx, ry),
                        _ => 0,
                    };
                    let table = self.hom_dim(Shifted::new(x, 0), Shifted::new(y, k));
                    if table != oracle {
                        return Err(Error::HomTableMismatch {
                            from: self.symbol(x).to_string(),
                            to: self.symbol(y).to_string(),
                            shift: k,
                            table,
                            oracle,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn enumerate_thick(&self) -> Vec<ThickSubcategory> {
        let n = self.symbols.len();
        let mut nodes: Vec<ThickSubcategory> =
            (0..1u16 << n).map(|m| self.close_mask(m as u8)).collect();
        nodes.sort_by_key(|t| (t.mask.count_ones(), t.mask));
        nodes.dedup();
        nodes
    }

    fn close_mask(&self, mut mask: u8) -> ThickSubcategory {
        loop {
            let before = mask;
            for t in &self.triangles {
                let inside = t.iter().filter(|x| mask & (1 << x.0) != 0).count();
                if inside >= 2 {
                    for x in t {
                        mask |= 1 << x.0;
                    }
                }
            }
            if mask == before {
                return ThickSubcategory { mask };
            }
        }
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn rank(&self) -> usize {
        match self.id {
            ModelId::A2Path => 2,
            ModelId::Zero => 0,
            _ => 1,
        }
    }

    pub fn num_indecs(&self) -> usize {
        self.symbols.len()
    }

    pub fn indecs(&self) -> impl Iterator<Item = Indec> + '_ {
        (0..self.symbols.len() as u8).map(Indec)
    }

    pub fn symbol(&self, x: Indec) -> &'static str {
        self.symbols[x.0 as usize]
    }

    pub fn indec(&self, symbol: &str) -> Result<Indec> {
        self.symbols
            .iter()
            .position(|s| *s == symbol)
            .map(|i| Indec(i as u8))
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// `X[k]` written as `X[k]`, or just `X` for `k = 0`.
    pub fn shifted_name(&self, x: Shifted) -> String {
        match x.shift {
            0 => self.symbol(x.indec).to_string(),
            k => format!("{}[{k}]", self.symbol(x.indec)),
        }
    }

    pub fn object_name(&self, obj: &DgObject) -> String {
        if obj.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = obj.summands().iter().map(|&s| self.shifted_name(s)).collect();
        parts.join(" ⊕ ")
    }

    pub fn object(&self, parts: &[(&str, i32)]) -> Result<DgObject> {
        parts
            .iter()
            .map(|&(sym, k)| Ok(Shifted::new(self.indec(sym)?, k)))
            .collect::<Result<Vec<_>>>()
            .map(DgObject::new)
    }

    pub fn class_of_indec(&self, x: Indec) -> Class {
        self.classes[x.0 as usize].clone()
    }

    pub fn class_of_shifted(&self, x: Shifted) -> Class {
        let c = &self.classes[x.indec.0 as usize];
        if x.shift.rem_euclid(2) == 0 {
            c.clone()
        } else {
            -c
        }
    }

    /// Alternating sum of summand classes.
    pub fn class_of(&self, obj: &DgObject) -> Class {
        obj.summands()
            .iter()
            .fold(Class::zero(self.rank()), |acc, &s| &acc + &self.class_of_shifted(s))
    }

    pub fn check_object(&self, obj: &DgObject) -> Result<()> {
        match obj.summands().iter().find(|s| s.indec.0 as usize >= self.symbols.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{}", s.indec.0))),
            None => Ok(()),
        }
    }

    /// `dim Hom(x, y)` for shifted indecomposables.
    pub fn hom_dim(&self, x: Shifted, y: Shifted) -> u32 {
        let k = y.shift - x.shift;
        self.hom
            .iter()
            .find(|h| h.from == x.indec && h.to == y.indec && h.shift == k)
            .map_or(0, |h| h.dim)
    }

    /// Whether every summand pair of `x`, `y` has vanishing Hom.
    pub fn hom_vanishes(&self, x: &DgObject, y: &DgObject) -> bool {
        x.summands()
            .iter()
            .all(|&a| y.summands().iter().all(|&b| self.hom_dim(a, b) == 0))
    }

    pub fn triangles(&self) -> &[[Indec; 3]] {
        &self.triangles
    }

    /// The three rotations of every triangle `a → b → c → a[1]`:
    /// `(a, b, c)`, `(b, c, a[1])` and `(c[-1], a, b)`.
    pub fn rotated_triangles(&self) -> Vec<[Shifted; 3]> {
        let mut out = Vec::new();
        for &[a, b, c] in &self.triangles {
            let z = |x| Shifted::new(x, 0);
            out.push([z(a), z(b), z(c)]);
            out.push([z(b), z(c), Shifted::new(a, 1)]);
            out.push([Shifted::new(c, -1), z(a), z(b)]);
        }
        out
    }

    /// A triangle `p → q → r → p[1]` with the given first and last terms.
    fn triangle_with_ends(&self, p: Shifted, r: Shifted) -> Option<Shifted> {
        self.rotated_triangles().into_iter().find_map(|[tp, tq, tr]| {
            let t = p.shift - tp.shift;
            (tp.indec == p.indec && tr.shifted(t) == r).then(|| tq.shifted(t))
        })
    }

    pub fn thick_lattice(&self) -> &[ThickSubcategory] {
        &self.thick
    }

    pub fn whole(&self) -> ThickSubcategory {
        ThickSubcategory::from_mask(((1u16 << self.symbols.len()) - 1) as u8)
    }

    /// Smallest lattice node containing every summand of every generator.
    pub fn thick_closure(&self, gens: &[DgObject]) -> ThickSubcategory {
        let mask = gens
            .iter()
            .flat_map(|g| g.summands())
            .fold(0u8, |m, s| m | (1 << s.indec.0));
        self.close_mask(mask)
    }

    pub fn thick_from_indecs(&self, xs: impl IntoIterator<Item = Indec>) -> ThickSubcategory {
        self.close_mask(xs.into_iter().fold(0u8, |m, x| m | (1 << x.0)))
    }

    pub fn thick_label(&self, k: ThickSubcategory) -> String {
        if k.is_zero() {
            return "0".to_string();
        }
        if k == self.whole() {
            return "D".to_string();
        }
        let names: Vec<&str> = k.members().map(|x| self.symbol(x)).collect();
        format!("<{}>", names.join(","))
    }

    pub fn hearts(&self) -> &[Heart] {
        &self.hearts
    }

    pub fn heart(&self, r: HeartRef) -> &Heart {
        &self.hearts[r.heart]
    }

    /// Canonical id of a catalog heart: its simples joined by `|`.
    pub fn heart_id(&self, idx: usize) -> String {
        let h = &self.hearts[idx];
        if h.simples.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = h.simples.iter().map(|&s| self.shifted_name(s)).collect();
        parts.join("|")
    }

    /// Looks up a heart by canonical id; `std` names the standard heart.
    pub fn heart_index(&self, id: &str) -> Result<usize> {
        if id == "std" {
            return Ok(0);
        }
        (0..self.hearts.len())
            .find(|&i| self.heart_id(i) == id)
            .ok_or_else(|| Error::UnknownHeart(id.to_string()))
    }

    pub fn find_heart(&self, h: &Heart) -> Option<usize> {
        self.hearts.iter().position(|x| x == h)
    }

    /// Heart simples as objects in their actual position for `r`: the shift
    /// of `r` is a phase window, not an object shift, so these are the
    /// catalog simples themselves.
    pub fn simples(&self, r: HeartRef) -> &[Shifted] {
        &self.hearts[r.heart].simples
    }

    /// Places a shifted indecomposable relative to catalog heart `heart`.
    pub fn placement(&self, heart: usize, x: Shifted) -> Placement {
        let h = &self.hearts[heart];
        if let Some(j) = h.simple_for(x.indec) {
            return Placement::Simple { simple: j, degree: x.shift - h.simples[j].shift };
        }
        let [p, q, r] = self
            .rotated_triangles()
            .into_iter()
            .find(|t| t[1].indec == x.indec)
            .expect("non-simple indecomposable is the middle of a rotated triangle");
        let t = x.shift - q.shift;
        let locate = |y: Shifted| {
            let j = h.simple_for(y.indec).expect("triangle ends are heart simples");
            (j, y.shift + t - h.simples[j].shift)
        };
        let (sub, quot) = (locate(p), locate(r));
        debug_assert!(sub.1 >= quot.1);
        Placement::Extension { sub, quot }
    }

    /// Simple tilt of a catalog heart at one of its simples. Forward tilts
    /// replace `T` by `T[1]`, backward tilts by `T[-1]`. Returns the catalog
    /// index of the tilted heart and the shift `δ` with
    /// `tilted simples = catalog simples[δ]`, or `None` when the tilted heart
    /// falls outside the catalog.
    pub fn tilt(&self, heart: usize, simple: usize, forward: bool) -> Option<(usize, i32)> {
        let h = &self.hearts[heart];
        let t = h.simples[simple];
        let mut new = Vec::with_capacity(h.simples.len());
        new.push(t.shifted(if forward { 1 } else { -1 }));
        for (j, &x) in h.simples.iter().enumerate() {
            if j == simple {
                continue;
            }
            let y = if forward {
                if self.hom_dim(x, t.shifted(1)) == 0 {
                    x
                } else {
                    self.triangle_with_ends(t, x)?
                }
            } else if self.hom_dim(t, x.shifted(1)) == 0 {
                x
            } else {
                self.triangle_with_ends(x, t)?
            };
            new.push(y);
        }
        let (norm, delta) = Heart::normalise(new);
        self.find_heart(&norm).map(|i| (i, delta))
    }

    /// Verdier quotient by a thick subcategory.
    pub fn quotient(&self, k: ThickSubcategory) -> Result<Quotient> {
        if !self.thick.contains(&k) {
            return Err(Error::NotInLattice);
        }
        let n = self.num_indecs();
        if k.is_zero() {
            let rank = self.rank();
            return Ok(Quotient {
                model: self.clone(),
                kernel: k,
                projection: (0..rank).map(|i| (0..rank).map(|j| (i == j) as i64).collect()).collect(),
                images: (0..n as u8).map(|i| Some(Shifted::new(Indec(i), 0))).collect(),
            });
        }
        if k == self.whole() {
            return Ok(Quotient {
                model: CategoryModel::load(ModelId::Zero)?,
                kernel: k,
                projection: vec![],
                images: vec![None; n],
            });
        }
        // Proper nonzero nodes only exist for a2_path: <S1>, <S2>, <E>.
        let some = |x: Indec, k| Some(Shifted::new(x, k));
        let (projection, images) = match k.mask() {
            0b001 => (vec![0, 1], vec![None, some(S, 0), some(S, 0)]),
            0b010 => (vec![1, 0], vec![some(S, 0), None, some(S, 0)]),
            0b100 => (vec![1, -1], vec![some(S, 0), some(S, -1), None]),
            _ => return Err(Error::NotInLattice),
        };
        Ok(Quotient {
            model: CategoryModel::load(ModelId::A1Path)?,
            kernel: k,
            projection: vec![projection],
            images,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CategoryModel {
        CategoryModel::load(ModelId::A2Path).unwrap()
    }

    #[test]
    fn parses_model_ids() {
        assert_eq!(ModelId::parse("a2_path").unwrap(), ModelId::A2Path);
        assert_eq!(ModelId::parse("a1_cyn:3").unwrap(), ModelId::A1Cyn(3));
        assert!(ModelId::parse("a1_cyn:1").is_err());
        assert!(ModelId::parse("a1_cyn:x").is_err());
        assert!(ModelId::parse("a3_path").is_err());
        assert!(CategoryModel::load(ModelId::A1Cyn(1)).is_err());
    }

    #[test]
    fn a2_model_shape() {
        let m = a2();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.triangles(), &[[S2, E, S1]]);
        let labels: Vec<String> = m.thick_lattice().iter().map(|&k| m.thick_label(k)).collect();
        assert_eq!(labels, ["0", "<S1>", "<S2>", "<E>", "D"]);
        assert_eq!(m.heart_id(0), "S1|S2");
        assert_eq!(m.heart_index("std").unwrap(), 0);
    }

    #[test]
    fn a1_model_shape() {
        let m = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.num_indecs(), 1);
        assert!(m.triangles().is_empty());
        let s = Shifted::new(S, 0);
        assert_eq!(m.hom_dim(s, s.shifted(2)), 1);
        assert_eq!(m.hom_dim(s, s.shifted(1)), 0);
        assert_eq!(m.thick_lattice().len(), 2);
    }

    #[test]
    fn classes_use_alternating_signs() {
        let m = a2();
        assert_eq!(m.class_of(&m.object(&[("E", 0)]).unwrap()), Class(vec![1, 1]));
        assert_eq!(m.class_of(&m.object(&[("S1", 0), ("S1", 1)]).unwrap()), Class(vec![0, 0]));
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        assert_eq!(a1.class_of(&a1.object(&[("S", 2), ("S", 0)]).unwrap()), Class(vec![2]));
        assert!(m.object(&[("X", 0)]).is_err());
    }

    #[test]
    fn hom_vanishing_examples() {
        let m = a2();
        let o = |s| m.object(&[(s, 0)]).unwrap();
        assert!(m.hom_vanishes(&o("S1"), &o("S2")));
        assert!(!m.hom_vanishes(&o("S2"), &o("E")));
        for s in ["S1", "S2", "E"] {
            assert!(!m.hom_vanishes(&o(s), &o(s)));
        }
    }

    #[test]
    fn thick_closure_examples() {
        let m = a2();
        let o = |s| m.object(&[(s, 0)]).unwrap();
        assert_eq!(m.thick_label(m.thick_closure(&[o("S1")])), "<S1>");
        assert_eq!(m.thick_label(m.thick_closure(&[o("S1"), o("S2")])), "D");
        let a1 = CategoryModel::load(ModelId::A1Cyn(2)).unwrap();
        assert_eq!(a1.thick_closure(&[]), ThickSubcategory::ZERO);
    }

    #[test]
    fn placements_in_the_pentagon() {
        let m = a2();
        let std = m.heart_index("S1|S2").unwrap();
        assert_eq!(
            m.placement(std, Shifted::new(E, 0)),
            Placement::Extension { sub: (1, 0), quot: (0, 0) }
        );
        let h3 = m.heart_index("S1[1]|S2").unwrap();
        // E splits across degrees: S2 in degree 0, S1 = S1[1][-1] in degree -1.
        assert_eq!(
            m.placement(h3, Shifted::new(E, 0)),
            Placement::Extension { sub: (1, 0), quot: (0, -1) }
        );
        let h1 = m.heart_index("S2[1]|E").unwrap();
        assert_eq!(
            m.placement(h1, Shifted::new(S1, 0)),
            Placement::Extension { sub: (1, 0), quot: (0, 0) }
        );
    }

    #[test]
    fn pentagon_of_simple_tilts_closes() {
        let m = a2();
        let idx = |id: &str| m.heart_index(id).unwrap();
        // std --S2--> {E, S2[1]} --E--> {S1, E[1]} --S1--> std[1]
        assert_eq!(m.tilt(0, 1, true), Some((idx("S2[1]|E"), 0)));
        let h1 = idx("S2[1]|E");
        let e_pos = m.hearts()[h1].simples().iter().position(|s| s.indec == E).unwrap();
        assert_eq!(m.tilt(h1, e_pos, true), Some((idx("S1|E[1]"), 0)));
        let h2 = idx("S1|E[1]");
        assert_eq!(m.tilt(h2, 0, true), Some((0, 1)));
        // std --S1--> {S2, S1[1]} --S2--> std[1]
        assert_eq!(m.tilt(0, 0, true), Some((idx("S1[1]|S2"), 0)));
        let h3 = idx("S1[1]|S2");
        assert_eq!(m.tilt(h3, 1, true), Some((0, 1)));
        // backward tilts invert forward ones
        assert_eq!(m.tilt(h3, 0, false), Some((0, 0)));
    }

    #[test]
    fn catalog_hearts_are_simple_minded() {
        let m = a2();
        for h in m.hearts() {
            let s = h.simples();
            assert_eq!(s.len(), 2);
            let (a, b) = (m.class_of_shifted(s[0]), m.class_of_shifted(s[1]));
            assert_eq!((a.0[0] * b.0[1] - a.0[1] * b.0[0]).abs(), 1);
            for &x in s {
                for &y in s {
                    for k in -SHIFT_WINDOW..=0 {
                        if x == y && k == 0 {
                            continue;
                        }
                        assert_eq!(m.hom_dim(x, y.shifted(k)), 0, "{h:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_projections() {
        let m = a2();
        let s1 = m.thick_from_indecs([S1]);
        let q = m.quotient(s1).unwrap();
        assert_eq!(q.model.rank(), 1);
        assert_eq!(q.project(&Class(vec![3, 4])), Class(vec![4]));
        let id = m.quotient(ThickSubcategory::ZERO).unwrap();
        assert_eq!(id.model.id(), ModelId::A2Path);
        assert_eq!(id.project(&Class(vec![3, 4])), Class(vec![3, 4]));
        let z = m.quotient(m.whole()).unwrap();
        assert_eq!(z.model.id(), ModelId::Zero);
        assert_eq!(z.project(&Class(vec![3, 4])), Class(vec![]));
        assert!(m.quotient(ThickSubcategory::from_mask(0b011)).is_err());
    }
}
