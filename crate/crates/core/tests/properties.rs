use std::f64::consts::PI;

use gstab_core::completion::{
    limit_mass, limiting_phase, massless_subcategory, stabilized_hn, AffineSequence,
};
use gstab_core::geometry::{cover_distance, in_dirichlet_domain, ChargeSpace, CoverPoint};
use gstab_core::model::HeartRef;
use gstab_core::stability::{bridgeland_distance, slicing_distance};
use gstab_core::{CategoryModel, Charge, Complex64, DgObject, Indec, ModelId, Shifted, StabilityCondition};
use proptest::prelude::*;

fn a2() -> CategoryModel {
    CategoryModel::load(ModelId::A2Path).unwrap()
}

/// A valid condition on the A2 model: a heart from the first few catalog
/// entries, a window shift and simple charges inside that window.
fn a2_sigma() -> impl Strategy<Value = StabilityCondition> {
    (0usize..7, -3i32..4, 0.01f64..1.0, 0.01f64..1.0, 0.1f64..3.0, 0.1f64..3.0).prop_map(|(h, k, p1, p2, r1, r2)| {
        let m = a2();
        let heart = HeartRef::new(h, k);
        let z = |p: f64, r: f64| Complex64::from_polar(r, PI * (k as f64 + p));
        StabilityCondition::from_simple_charges(&m, heart, &[z(p1, r1), z(p2, r2)]).unwrap()
    })
}

fn a2_object() -> impl Strategy<Value = DgObject> {
    prop::collection::vec((0u8..3, -3i32..4), 1..5)
        .prop_map(|v| DgObject::new(v.into_iter().map(|(i, s)| Shifted::new(Indec(i), s)).collect()))
}

fn cover_point() -> impl Strategy<Value = CoverPoint> {
    (1e-3f64..3.0, -20.0f64..20.0).prop_map(|(r, t)| CoverPoint::new(r, t))
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mass_is_additive_and_shift_invariant(s in a2_sigma(), a in a2_object(), b in a2_object(), k in -3i32..4) {
        let m = a2();
        let sl = s.slicing(&m).unwrap();
        let (ma, mb) = (sl.mass(&a).unwrap(), sl.mass(&b).unwrap());
        prop_assert!(rel_close(sl.mass(&a.direct_sum(&b)).unwrap(), ma + mb));
        prop_assert!(rel_close(sl.mass(&a.shifted(k)).unwrap(), ma));
        let (hi, lo) = sl.phases(&a).unwrap();
        let (hs, ls) = sl.phases(&a.shifted(k)).unwrap();
        prop_assert!((hs - hi - k as f64).abs() < 1e-12 && (ls - lo - k as f64).abs() < 1e-12);
        prop_assert!(hi >= lo);
    }

    #[test]
    fn hn_factors_are_ordered_and_sum_to_the_class(s in a2_sigma(), a in a2_object()) {
        let m = a2();
        let sl = s.slicing(&m).unwrap();
        let hn = sl.hn_filtration(&a).unwrap();
        for w in hn.factors.windows(2) {
            prop_assert!(w[0].phase > w[1].phase);
        }
        let total = hn.factors.iter().fold(gstab_core::Class::zero(2), |acc, f| &acc + &m.class_of(&f.object));
        prop_assert_eq!(total, m.class_of(&a));
        // Each factor is semistable of its phase.
        for f in &hn.factors {
            for &x in f.object.summands() {
                let p = sl.phase_of(x);
                prop_assert!(p.is_some_and(|p| (p - f.phase).abs() <= 1e-12));
            }
        }
    }

    #[test]
    fn triangle_mass_inequality(s in a2_sigma(), k in -3i32..4) {
        let m = a2();
        let sl = s.slicing(&m).unwrap();
        let o = |name: &str| m.object(&[(name, k)]).unwrap();
        let lhs = sl.mass(&o("E")).unwrap();
        let rhs = sl.mass(&o("S1")).unwrap() + sl.mass(&o("S2")).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn semistable_phases_respect_hom_vanishing(s in a2_sigma()) {
        let m = a2();
        let sl = s.slicing(&m).unwrap();
        let xs: Vec<(Shifted, f64)> = m
            .indecs()
            .flat_map(|x| (-3..4).map(move |k| Shifted::new(x, k)))
            .filter_map(|x| sl.phase_of(x).map(|p| (x, p)))
            .collect();
        for &(x, p) in &xs {
            for &(y, q) in &xs {
                if p > q + 1e-12 {
                    prop_assert_eq!(m.hom_dim(x, y), 0, "Hom({:?}, {:?}) with phases {} > {}", x, y, p, q);
                }
            }
        }
    }

    #[test]
    fn distances_are_metrics(a in a2_sigma(), b in a2_sigma(), c in a2_sigma()) {
        let m = a2();
        for d in [slicing_distance, bridgeland_distance] {
            let (ab, ba) = (d(&m, &a, &b).unwrap(), d(&m, &b, &a).unwrap());
            prop_assert!((ab - ba).abs() <= 1e-9);
            let (bc, ac) = (d(&m, &b, &c).unwrap(), d(&m, &a, &c).unwrap());
            prop_assert!(ac <= ab + bc + 1e-9);
            prop_assert_eq!(d(&m, &a, &a).unwrap(), 0.0);
        }
        let sp = ChargeSpace::euclidean(&m);
        let dz = |x: &StabilityCondition, y: &StabilityCondition| sp.charge_distance(&x.charge, &y.charge).unwrap();
        prop_assert!((dz(&a, &b) - dz(&b, &a)).abs() <= 1e-9);
        prop_assert!(dz(&a, &c) <= dz(&a, &b) + dz(&b, &c) + 1e-9);
    }

    #[test]
    fn cover_distance_is_a_deck_invariant_metric(p in cover_point(), q in cover_point(), r in cover_point(), k in -5i64..6) {
        let d = cover_distance;
        prop_assert!((d(&p, &q) - d(&q, &p)).abs() <= 1e-12);
        prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-9);
        prop_assert_eq!(d(&p.deck(k), &q.deck(k)), d(&p, &q));
        // The projection to ℂ* is 1-Lipschitz.
        prop_assert!((p.project() - q.project()).norm() <= d(&p, &q) + 1e-12);
        if k != 0 {
            prop_assert!((d(&p, &p.deck(k)) - 2.0 * p.r()).abs() <= 1e-12);
        }
    }

    #[test]
    fn dirichlet_tile_of_the_base_point(r in 1e-3f64..3.0, theta in -7.0f64..7.0) {
        let x = CoverPoint::new(1.0, 0.0);
        let y = CoverPoint::new(r, theta);
        // Away from the boundary |θ| = π the tile is exactly |θ| < π.
        prop_assume!((theta.abs() - PI).abs() > 1e-9);
        prop_assert_eq!(in_dirichlet_domain(&x, &y), theta.abs() < PI);
    }

    #[test]
    fn massless_objects_form_a_thick_subcategory(
        a1 in -2.0f64..2.0, a2v in -2.0f64..2.0, zero in 0usize..4,
        p1 in 0.05f64..0.95, p2 in 0.05f64..0.95,
    ) {
        let m = a2();
        // Limit charges with optional vanishing, drifts pushing into ℍ.
        let mut a = vec![Complex64::new(a1, 0.5), Complex64::new(a2v, 0.5)];
        match zero {
            1 => a[0] = Complex64::new(0.0, 0.0),
            2 => a[1] = Complex64::new(0.0, 0.0),
            3 => a = vec![Complex64::new(0.0, 0.0); 2],
            _ => {}
        }
        let b = vec![Complex64::from_polar(1.0, PI * p1), Complex64::from_polar(1.0, PI * p2)];
        let s = AffineSequence::new(&m, HeartRef::standard(0), Charge(a), Charge(b), None).unwrap();
        let k = massless_subcategory(&m, &s).unwrap();
        prop_assert!(m.thick_lattice().contains(&k));
        for [x, y, z] in m.rotated_triangles() {
            let n = [x, y, z].iter().filter(|t| k.contains_indec(t.indec)).count();
            prop_assert!(n != 2, "two of three vertices in K");
        }
        for x in m.indecs() {
            let massless = limit_mass(&m, &s, &DgObject::single(Shifted::new(x, 0))).unwrap() <= 1e-12;
            prop_assert_eq!(massless, k.contains_indec(x));
            for sh in [-2, 3] {
                let o = DgObject::single(Shifted::new(x, sh));
                let base = limiting_phase(&m, &s, &DgObject::single(Shifted::new(x, 0))).unwrap();
                let shifted = limiting_phase(&m, &s, &o).unwrap();
                prop_assert_eq!(base.map(|p| p + sh as f64), shifted);
            }
        }
    }

    #[test]
    fn limit_mass_matches_evaluation(
        a1 in -2.0f64..2.0, a2v in 0.1f64..2.0, p1 in 0.05f64..0.95, p2 in 0.05f64..0.95, obj in a2_object(),
    ) {
        let m = a2();
        let a = vec![Complex64::new(0.0, 0.0), Complex64::new(a1, a2v)];
        let b = vec![Complex64::from_polar(1.0, PI * p1), Complex64::from_polar(0.5, PI * p2)];
        let s = AffineSequence::new(&m, HeartRef::standard(0), Charge(a), Charge(b), None).unwrap();
        let lim = limit_mass(&m, &s, &obj).unwrap();
        let hn = stabilized_hn(&m, &s, &obj).unwrap();
        for (n, tol) in [(1_000u64, 1e-2), (1_000_000, 1e-5)] {
            let n = n.max(hn.n_e);
            let sigma = s.evaluate(n).unwrap();
            let mass = sigma.slicing(&m).unwrap().mass(&obj).unwrap();
            prop_assert!((mass - lim).abs() <= tol * lim.max(1e-300) + 10.0 / n as f64, "n={} mass={} lim={}", n, mass, lim);
        }
    }
}

#[test]
fn thick_closure_is_a_closure_operator() {
    let m = a2();
    let subsets: Vec<Vec<DgObject>> = (0u8..8)
        .map(|mask| {
            m.indecs()
                .filter(|x| mask & (1 << x.0) != 0)
                .map(|x| DgObject::single(Shifted::new(x, 0)))
                .collect()
        })
        .collect();
    for g in &subsets {
        let k = m.thick_closure(g);
        assert!(g.iter().all(|o| k.contains(o)), "extensive");
        let members: Vec<DgObject> = k.members().map(|x| DgObject::single(Shifted::new(x, 0))).collect();
        assert_eq!(m.thick_closure(&members), k, "idempotent");
        for h in &subsets {
            if g.iter().all(|o| h.contains(o)) {
                assert_eq!(m.thick_closure(h).intersect(k), k, "monotone");
            }
        }
    }
}

#[test]
fn quotient_kills_exactly_the_kernel() {
    let m = a2();
    for &k in m.thick_lattice() {
        let q = m.quotient(k).unwrap();
        for x in m.indecs() {
            for sh in -8..=8 {
                let obj = DgObject::single(Shifted::new(x, sh));
                let image_zero = q.project(&m.class_of(&obj)).is_zero();
                assert_eq!(image_zero, k.contains(&obj), "{} {:?}", m.thick_label(k), obj);
                assert_eq!(q.image(Shifted::new(x, sh)).is_none(), k.contains(&obj));
            }
        }
    }
}

#[test]
fn triangle_classes_add_up() {
    let m = a2();
    for [a, b, c] in m.rotated_triangles() {
        let (ca, cb, cc) = (m.class_of_shifted(a), m.class_of_shifted(b), m.class_of_shifted(c));
        assert_eq!(cb, &ca + &cc);
    }
}
