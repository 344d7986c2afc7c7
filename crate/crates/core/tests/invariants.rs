use mayocut::bisection::Atom;
use mayocut::discrete::SearchPhase;
use mayocut::measure::median_offset_interval;
use mayocut::oracle::gen_random_instance;
use mayocut::{
    bisects, canonicalize, distance_point_hyperplane, evaluate_cut, hyperplane_through,
    side_masses, side_of, solve_touching_cut, touches, AtomicMeasure, Hyperplane, Instance, Point,
    Rational, Scalar, Side, SolverConfig, Span,
};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::from_i64(p) / Rational::from_i64(d)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(p, d)| q(p, d))
}

fn point(dim: usize) -> impl Strategy<Value = Point<Rational>> {
    prop::collection::vec(rational(), dim).prop_map(Point::new)
}

fn plane(dim: usize) -> impl Strategy<Value = Hyperplane<Rational>> {
    (prop::collection::vec(rational(), dim), rational())
        .prop_filter("nonzero normal", |(u, _)| {
            u.iter().any(|x| *x != Rational::from_i64(0))
        })
        .prop_map(|(u, c)| Hyperplane::new(u, c).unwrap())
}

fn measure(dim: usize, max: usize) -> impl Strategy<Value = AtomicMeasure<Rational>> {
    prop::collection::vec((point(dim), 1i64..=9), 1..=max).prop_filter_map(
        "distinct points",
        |raw| {
            let atoms = raw
                .into_iter()
                .map(|(point, m)| Atom {
                    point,
                    mass: q(m, 1),
                })
                .collect();
            AtomicMeasure::new("m", atoms).ok()
        },
    )
}

/// Rotation by the Pythagorean angle with cosine 3/5, in the first two axes.
fn rotate(v: &[Rational]) -> Vec<Rational> {
    let (c, s) = (q(3, 5), q(4, 5));
    let mut out = v.to_vec();
    out[0] = &c * &v[0] - &s * &v[1];
    out[1] = &s * &v[0] + &c * &v[1];
    out
}

fn motion(p: &Point<Rational>, t: &[Rational]) -> Point<Rational> {
    Point::new(
        rotate(p.coords())
            .iter()
            .zip(t)
            .map(|(x, y)| x + y)
            .collect(),
    )
}

/// Image of `{⟨u,x⟩ = c}` under `x ↦ Rx + t`: normal `Ru`, offset `c + ⟨Ru, t⟩`.
fn moved_plane(h: &Hyperplane<Rational>, t: &[Rational]) -> Hyperplane<Rational> {
    let u = rotate(h.normal());
    let shift: Rational = u.iter().zip(t).map(|(a, b)| a * b).sum();
    Hyperplane::new(u, h.offset() + shift).unwrap()
}

fn flipped(h: &Hyperplane<Rational>) -> (Vec<Rational>, Rational) {
    (h.normal().iter().map(|x| -x).collect(), -h.offset())
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent_and_sign_free(u in prop::collection::vec(rational(), 3), c in rational()) {
        prop_assume!(u.iter().any(|x| *x != Rational::from_i64(0)));
        let h = canonicalize(u.clone(), c.clone()).unwrap();
        prop_assert_eq!(&canonicalize(h.normal().to_vec(), h.offset().clone()).unwrap(), &h);
        let neg = canonicalize(u.iter().map(|x| -x).collect(), -c).unwrap();
        prop_assert_eq!(neg, h);
    }

    #[test]
    fn float_canonical_form_is_sign_free(u in prop::collection::vec(-10.0f64..10.0, 2), c in -10.0f64..10.0) {
        prop_assume!(u.iter().any(|x| x.abs() > 1e-6));
        let h = canonicalize(u.clone(), c).unwrap();
        let neg = canonicalize(u.iter().map(|x| -x).collect(), -c).unwrap();
        prop_assert_eq!(&neg, &h);
        let again = canonicalize(h.normal().to_vec(), *h.offset()).unwrap();
        for (a, b) in again.normal().iter().zip(h.normal()) {
            prop_assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn side_of_partitions_and_matches_distance(points in prop::collection::vec(point(2), 0..20), h in plane(2)) {
        let mut counts = [0usize; 3];
        for p in &points {
            let side = side_of(p, &h, 0.0).unwrap();
            counts[side as usize] += 1;
            prop_assert_eq!(side == Side::On, distance_point_hyperplane(p, &h).unwrap() == 0.0);
        }
        prop_assert_eq!(counts.iter().sum::<usize>(), points.len());
    }

    #[test]
    fn fitted_plane_contains_its_points(points in prop::collection::vec(point(3), 1..=3)) {
        if let Span::Plane(h) = hyperplane_through(&points).unwrap() {
            for p in &points {
                prop_assert_eq!(side_of(p, &h, 0.0).unwrap(), Side::On);
            }
        }
    }

    #[test]
    fn fitting_commutes_with_rigid_motions(points in prop::collection::vec(point(3), 3), t in prop::collection::vec(rational(), 3)) {
        let moved: Vec<_> = points.iter().map(|p| motion(p, &t)).collect();
        match (hyperplane_through(&points).unwrap(), hyperplane_through(&moved).unwrap()) {
            (Span::Plane(h), Span::Plane(g)) => prop_assert_eq!(moved_plane(&h, &t), g),
            (Span::Deficient(a), Span::Deficient(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn side_masses_conserve_total(m in measure(2, 10), h in plane(2)) {
        let s = side_masses(&m, &h, 0.0).unwrap();
        prop_assert_eq!(&s.total(), m.total());
    }

    #[test]
    fn float_side_masses_conserve_total(
        raw in prop::collection::vec((prop::collection::vec(-5.0f64..5.0, 2), 0.1f64..3.0), 1..12),
        u in prop::collection::vec(-1.0f64..1.0, 2),
        c in -2.0f64..2.0,
    ) {
        prop_assume!(u.iter().any(|x| x.abs() > 1e-3));
        let atoms = raw.into_iter().map(|(p, w)| Atom { point: Point::new(p), mass: w }).collect();
        let Ok(m) = AtomicMeasure::new("f", atoms) else { return Ok(()) };
        let s = side_masses(&m, &Hyperplane::new(u, c).unwrap(), 1e-9).unwrap();
        prop_assert!((s.total() - m.total()).abs() <= 1e-12 * m.total());
    }

    #[test]
    fn predicates_ignore_orientation_and_scale(m in measure(2, 10), h in plane(2), k in 1i64..=7) {
        let (u, c) = flipped(&h);
        // Raw, uncanonicalized opposite orientation through the Scalar canonical form.
        let opposite = Hyperplane::new(u, c).unwrap();
        let a = evaluate_cut(std::slice::from_ref(&m), &h, 0.0).unwrap();
        let b = evaluate_cut(std::slice::from_ref(&m), &opposite, 0.0).unwrap();
        prop_assert_eq!(a.all_bisected, b.all_bisected);
        prop_assert_eq!(a.all_touched, b.all_touched);
        let scaled = m.with_masses(m.atoms().iter().map(|x| &x.mass * q(k, 3)).collect()).unwrap();
        prop_assert_eq!(bisects(&m, &h, 0.0).unwrap(), bisects(&scaled, &h, 0.0).unwrap());
        prop_assert_eq!(touches(&m, &h, 0.0).unwrap(), touches(&scaled, &h, 0.0).unwrap());
    }

    #[test]
    fn atom_on_plane_keeps_bisection(m in measure(2, 8), u in prop::collection::vec(rational(), 2), w in 1i64..=20, x in rational()) {
        prop_assume!(u.iter().any(|x| *x != Rational::from_i64(0)));
        let (lo, _) = median_offset_interval(&m, &u).unwrap();
        let h = Hyperplane::new(u, lo).unwrap();
        prop_assert!(bisects(&m, &h, 0.0).unwrap());
        // A point on h, solved for a coordinate with nonzero normal component.
        let u = h.normal();
        let (i, j) = if u[0] != Rational::from_i64(0) { (0, 1) } else { (1, 0) };
        let mut coords = vec![Rational::from_i64(0); 2];
        coords[j] = x.clone();
        coords[i] = (h.offset() - &u[j] * &x) / &u[i];
        let p = Point::new(coords);
        prop_assert_eq!(side_of(&p, &h, 0.0).unwrap(), Side::On);
        let mut atoms = m.atoms().to_vec();
        if atoms.iter().any(|a| a.point == p) {
            return Ok(());
        }
        atoms.push(Atom { point: p, mass: q(w, 1) });
        prop_assert!(bisects(&AtomicMeasure::new("m+", atoms).unwrap(), &h, 0.0).unwrap());
    }

    #[test]
    fn median_interval_is_exactly_the_bisecting_offsets(m in measure(2, 8), u in prop::collection::vec(rational(), 2)) {
        prop_assume!(u.iter().any(|x| *x != Rational::from_i64(0)));
        let (lo, hi) = median_offset_interval(&m, &u).unwrap();
        prop_assert!(lo <= hi);
        let proj: Vec<Rational> = m.atoms().iter().map(|a| a.point.coords().iter().zip(&u).map(|(x, y)| x * y).sum()).collect();
        prop_assert!(proj.contains(&lo) && proj.contains(&hi));
        let mut probes = proj.clone();
        probes.sort();
        for w in proj.windows(2) {
            probes.push((&w[0] + &w[1]) / Rational::from_i64(2));
        }
        probes.push(&probes[0] - Rational::from_i64(1));
        for c in probes {
            let h = Hyperplane::new(u.clone(), c.clone()).unwrap();
            prop_assert_eq!(bisects(&m, &h, 0.0).unwrap(), lo <= c && c <= hi, "offset {}", c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solutions_verify_and_witnesses_lie_on_the_plane(seed in any::<u64>(), dim in 2usize..=3) {
        let inst = gen_random_instance(seed, dim, 6).unwrap();
        let sol = solve_touching_cut(&inst, &SolverConfig::default()).unwrap();
        prop_assert!(sol.report.passes());
        for (m, &k) in inst.measures().iter().zip(&sol.witness_tuple) {
            prop_assert_eq!(side_of(&m.atoms()[k].point, &sol.hyperplane, 0.0).unwrap(), Side::On);
        }
    }

    #[test]
    fn solver_commutes_with_rigid_motions(seed in any::<u64>(), t in prop::collection::vec(rational(), 2)) {
        let inst = gen_random_instance(seed, 2, 7).unwrap();
        let sol = solve_touching_cut(&inst, &SolverConfig::default()).unwrap();
        prop_assume!(sol.diagnostics.phase == SearchPhase::FullRank);
        let moved: Vec<AtomicMeasure<Rational>> = inst
            .measures()
            .iter()
            .map(|m| {
                let atoms = m.atoms().iter().map(|a| Atom { point: motion(&a.point, &t), mass: a.mass.clone() }).collect();
                AtomicMeasure::new(m.name(), atoms).unwrap()
            })
            .collect();
        let moved_sol = solve_touching_cut(&Instance::new(moved).unwrap(), &SolverConfig::default()).unwrap();
        prop_assert_eq!(moved_sol.witness_tuple, sol.witness_tuple);
        prop_assert_eq!(moved_sol.hyperplane, moved_plane(&sol.hyperplane, &t));
    }
}
