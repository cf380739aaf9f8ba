//! Property tests for the structural invariants: evaluation homomorphism,
//! rank symmetries, independence composition, affine invariance, span
//! membership, common-component construction oracles, and the dimension
//! identity on generated intersection sets.

use proptest::prelude::*;

use curvesect::curves::{
    common_component, find_overloaded_line, is_in_sigma_span, is_n_complete, vanishing_space,
};
use curvesect::decision::decide_intersection_set;
use curvesect::generators::{gen_line_product, Splitmix64};
use curvesect::independence::{
    eval_matrix, fundamental_polynomial, is_essentially_dependent, is_n_independent, PointSet,
};
use curvesect::linalg::{self, QMatrix};
use curvesect::poly::{dim_pi, rat, Poly, Q};

fn arb_rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn arb_point() -> impl Strategy<Value = (Q, Q)> {
    (arb_rat(), arb_rat())
}

fn arb_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    (0..=max_degree).prop_flat_map(|n| {
        proptest::collection::vec(arb_rat(), dim_pi(n as i64))
            .prop_map(move |coeffs| Poly::from_coeffs(n, coeffs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        p in arb_poly(3),
        q in arb_poly(3),
        pt in arb_point(),
    ) {
        let lhs = p.multiply(&q).evaluate(&pt);
        let rhs = p.evaluate(&pt) * q.evaluate(&pt);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn addition_commutes_with_evaluation(
        p in arb_poly(4),
        q in arb_poly(4),
        pt in arb_point(),
    ) {
        prop_assert_eq!(
            p.add(&q).evaluate(&pt),
            p.evaluate(&pt) + q.evaluate(&pt)
        );
    }

    #[test]
    fn poly_json_round_trips(p in arb_poly(5)) {
        let s = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.degree_bound(), p.degree_bound());
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn pointset_json_round_trips(pts in proptest::collection::hash_set(arb_point(), 0..8)) {
        let set = PointSet::new(pts.into_iter().collect()).unwrap();
        let s = serde_json::to_string(&set).unwrap();
        let back: PointSet = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, set);
    }

    #[test]
    fn rank_is_transpose_invariant(
        rows in 1usize..=12,
        cols in 1usize..=12,
        seed in any::<u64>(),
    ) {
        let mut rng = Splitmix64::new(seed);
        let m = QMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.below(7) as i64 - 3, 1)).collect())
                .collect(),
        );
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn nullspace_is_a_canonical_basis(
        rows in 1usize..=8,
        cols in 1usize..=8,
        seed in any::<u64>(),
    ) {
        let mut rng = Splitmix64::new(seed);
        let m = QMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.below(5) as i64 - 2, 1)).collect())
                .collect(),
        );
        let basis = linalg::nullspace(&m);
        prop_assert_eq!(basis.len(), cols - linalg::rank(&m));
        for v in &basis {
            prop_assert!(m.apply(v).iter().all(num_traits::Zero::is_zero));
        }
        if !basis.is_empty() {
            let stacked = QMatrix::from_rows(basis.clone());
            prop_assert_eq!(linalg::rank(&stacked), basis.len());
        }
    }

    #[test]
    fn solve_solutions_are_exact(
        rows in 1usize..=8,
        cols in 1usize..=8,
        seed in any::<u64>(),
    ) {
        let mut rng = Splitmix64::new(seed);
        let m = QMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.below(5) as i64 - 2, 1)).collect())
                .collect(),
        );
        let b: Vec<Q> = (0..rows).map(|_| rat(rng.below(5) as i64 - 2, 1)).collect();
        if let Some(v) = linalg::solve(&m, &b) {
            prop_assert_eq!(m.apply(&v), b);
        }
    }

    #[test]
    fn essential_dependence_is_permutation_and_affine_invariant(
        seed in any::<u64>(),
        k in 0i64..=3,
    ) {
        let mut rng = Splitmix64::new(seed);
        let size = (rng.below(6) + 2) as usize;
        let mut pts: Vec<(Q, Q)> = Vec::new();
        while pts.len() < size {
            let p = rng.point();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let set = PointSet::new(pts.clone()).unwrap();
        let base = is_essentially_dependent(&set, k);

        // reversal is a permutation
        let mut reversed = pts.clone();
        reversed.reverse();
        prop_assert_eq!(
            is_essentially_dependent(&PointSet::new(reversed).unwrap(), k),
            base
        );

        // the affine shift (x, y) -> (x + 1, y - 2)
        let shifted: Vec<(Q, Q)> = pts
            .iter()
            .map(|(x, y)| (x + rat(1, 1), y - rat(2, 1)))
            .collect();
        prop_assert_eq!(
            is_essentially_dependent(&PointSet::new(shifted).unwrap(), k),
            base
        );
    }
}

#[test]
fn products_lie_in_the_sigma_span() {
    let mut rng = Splitmix64::new(0x5FA2);
    for trial in 0..200u64 {
        let sigma = random_nonzero_poly(&mut rng, (trial % 2 + 1) as usize);
        let q_deg = rng.below(5) as usize; // degree <= 4, constants included
        let q = random_nonzero_poly(&mut rng, q_deg);
        assert!(
            is_in_sigma_span(&sigma.multiply(&q), &sigma),
            "product escaped the span at trial {trial}"
        );
    }
}

fn random_nonzero_poly(rng: &mut Splitmix64, degree: usize) -> Poly {
    loop {
        let coeffs: Vec<Q> = (0..dim_pi(degree as i64)).map(|_| rng.rational()).collect();
        let p = Poly::from_coeffs(degree, coeffs).unwrap();
        if p.effective_degree() == Some(degree) {
            return p;
        }
    }
}

/// Random product of `k` pairwise non-proportional lines drawn from a pool
/// disjoint with `used`; coprimality across calls is then structural.
fn random_line_product(rng: &mut Splitmix64, k: usize, used: &mut Vec<(Q, Q)>) -> Poly {
    let mut factors = Vec::with_capacity(k);
    while factors.len() < k {
        let coeff = (rng.rational(), rng.rational());
        if used.contains(&coeff) {
            continue;
        }
        used.push(coeff.clone());
        factors.push(
            Poly::from_terms(
                1,
                &[(0, 1, rat(1, 1)), (1, 0, -coeff.0.clone()), (0, 0, -coeff.1.clone())],
            )
            .unwrap(),
        );
    }
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, l| acc.multiply(l))
}

#[test]
fn common_component_detects_constructed_factors() {
    // f, g, h products of lines drawn from disjoint pools: g and h are
    // coprime by construction, and f*g vs f*h share exactly f
    let mut rng = Splitmix64::new(0xFAC70);
    for _ in 0..60 {
        let mut used: Vec<(Q, Q)> = Vec::new();
        let (kf, kg, kh) = (
            (rng.below(2) + 1) as usize,
            (rng.below(2) + 1) as usize,
            (rng.below(2) + 1) as usize,
        );
        let f = random_line_product(&mut rng, kf, &mut used);
        let g = random_line_product(&mut rng, kg, &mut used);
        let h = random_line_product(&mut rng, kh, &mut used);
        assert!(common_component(&f.multiply(&g), &f.multiply(&h)).unwrap());
        assert!(!common_component(&g, &h).unwrap());
    }
}

#[test]
fn common_component_sees_through_multiplicity() {
    let mut rng = Splitmix64::new(0xD0B13);
    for _ in 0..20 {
        let mut used: Vec<(Q, Q)> = Vec::new();
        let f = random_line_product(&mut rng, 1, &mut used);
        let g = random_line_product(&mut rng, 1, &mut used);
        let h = random_line_product(&mut rng, 1, &mut used);
        // f^2 g vs f h: the shared factor appears with different multiplicity
        let left = f.multiply(&f).multiply(&g);
        let right = f.multiply(&h);
        assert!(common_component(&left, &right).unwrap());
        assert!(!common_component(&g.multiply(&g), &h).unwrap());
    }
}

#[test]
fn common_component_handles_irreducible_conics() {
    // the unit circle is coprime to every product of lines
    let circle =
        Poly::from_terms(2, &[(2, 0, rat(1, 1)), (0, 2, rat(1, 1)), (0, 0, rat(-1, 1))]).unwrap();
    let mut rng = Splitmix64::new(0xC17C);
    let mut used = Vec::new();
    let lines = random_line_product(&mut rng, 2, &mut used);
    assert!(!common_component(&circle, &lines).unwrap());
    assert!(common_component(&circle.multiply(&lines), &circle).unwrap());
}

#[test]
fn independence_composes_across_a_curve() {
    // a set on a line sigma_1 that is n-independent, extended by an
    // (n-1)-independent set off the line, stays n-independent; every added
    // point must also own a fundamental polynomial in the union
    let mut rng = Splitmix64::new(0xC0);
    for n in 2i64..=5 {
        for _ in 0..10 {
            let a = rng.rational();
            let b = rng.rational();
            // up to n+1 points on the line y = ax + b (Severi: n-independent)
            let mut on_line: Vec<(Q, Q)> = Vec::new();
            while (on_line.len() as i64) < n + 1 {
                let x = rng.rational();
                let p = (x.clone(), &a * &x + &b);
                if !on_line.contains(&p) {
                    on_line.push(p);
                }
            }
            // up to n points off the line ((n-1)-independent by Severi)
            let mut off_line: Vec<(Q, Q)> = Vec::new();
            while (off_line.len() as i64) < n {
                let p = rng.point();
                if (&a * &p.0 + &b) != p.1 && !off_line.contains(&p) && !on_line.contains(&p) {
                    off_line.push(p);
                }
            }
            let x_set = PointSet::new(on_line.clone()).unwrap();
            let y_set = PointSet::new(off_line.clone()).unwrap();
            if !is_n_independent(&y_set, n - 1) {
                continue; // random draw may be degenerate; Severi only binds size
            }
            assert!(is_n_independent(&x_set, n));
            let union =
                PointSet::new(on_line.iter().chain(&off_line).cloned().collect()).unwrap();
            assert!(is_n_independent(&union, n), "union lost independence at n={n}");
            for p in off_line.iter() {
                assert!(
                    fundamental_polynomial(p, &union, n).unwrap().is_some(),
                    "added point lost its fundamental polynomial at n={n}"
                );
            }
        }
    }
}

#[test]
fn completeness_dimension_identity_on_generated_intersections() {
    // for X = sigma_m cap sigma_n with m < n: the degree-n vanishing space
    // is sigma_m * Pi_(n-m) plus one extra dimension for sigma_n
    for (m, n, seed) in [(1, 2, 0), (1, 3, 1), (2, 3, 2), (2, 4, 3), (3, 4, 4), (2, 5, 5)] {
        let s = gen_line_product(m, n, seed).unwrap();
        let sigma_m = s.sigma_m.as_ref().unwrap();
        assert!(!is_n_complete(&s.points, sigma_m, n).unwrap());
        assert_eq!(
            curvesect::independence::vanishing_dim(&s.points, n),
            dim_pi(n - m) + 1,
            "dimension identity failed for ({m},{n})"
        );
    }
}

#[test]
fn overloaded_line_matches_brute_force_collinearity() {
    let mut rng = Splitmix64::new(0x11E5);
    for trial in 0..40u64 {
        let n = (trial % 3 + 1) as i64;
        let size = (rng.below(7) + 4) as usize; // 4..=10
        let points = if trial % 2 == 0 {
            let mut pts: Vec<(Q, Q)> = Vec::new();
            let a = rng.rational();
            let b = rng.rational();
            while (pts.len() as i64) < n + 2 {
                let x = rng.rational();
                let p = (x.clone(), &a * &x + &b);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            while pts.len() < size.max((n + 2) as usize) {
                let p = rng.point();
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            PointSet::new(pts).unwrap()
        } else {
            let mut pts: Vec<(Q, Q)> = Vec::new();
            while pts.len() < size {
                let p = rng.point();
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            PointSet::new(pts).unwrap()
        };
        let fast = find_overloaded_line(&points, n);
        let brute = brute_force_overload(&points, n);
        assert_eq!(fast.is_some(), brute, "disagreement at n={n} on {points}");
    }
}

/// Independent oracle: some (n+2)-subset is collinear, by cross products.
fn brute_force_overload(points: &PointSet, n: i64) -> bool {
    use itertools::Itertools;
    let need = (n + 2) as usize;
    if points.len() < need {
        return false;
    }
    points
        .points()
        .iter()
        .combinations(need)
        .any(|subset| {
            let (p0, p1) = (subset[0], subset[1]);
            subset[2..].iter().all(|p| {
                let lhs = (&p1.0 - &p0.0) * (&p.1 - &p0.1);
                let rhs = (&p1.1 - &p0.1) * (&p.0 - &p0.0);
                lhs == rhs
            })
        })
}

#[test]
fn vanishing_space_matches_nullspace_count() {
    let mut rng = Splitmix64::new(0xD1D);
    for _ in 0..30 {
        let size = (rng.below(8) + 1) as usize;
        let mut pts: Vec<(Q, Q)> = Vec::new();
        while pts.len() < size {
            let p = rng.point();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let set = PointSet::new(pts).unwrap();
        for n in 0..=3i64 {
            let space = vanishing_space(&set, n);
            assert_eq!(space.basis.len(), curvesect::independence::vanishing_dim(&set, n));
            assert_eq!(
                space.basis.len(),
                linalg::nullspace(&eval_matrix(&set, n)).len()
            );
            for b in &space.basis {
                for p in set.iter() {
                    assert!(b.vanishes_at(p));
                }
            }
        }
    }
}

#[test]
fn witnesses_are_deterministic_across_runs() {
    let s = gen_line_product(3, 4, 17).unwrap();
    let d1 = decide_intersection_set(&s.points, 3, 4).unwrap();
    let d2 = decide_intersection_set(&s.points, 3, 4).unwrap();
    assert_eq!(
        serde_json::to_string(&d1).unwrap(),
        serde_json::to_string(&d2).unwrap()
    );
    assert!(d1.verdict);
}

#[test]
fn line_products_carry_n_points_per_component() {
    // components of the degree-m family each meet the set in exactly n
    // points, and no point lies on two components
    let mut rng = Splitmix64::new(0x2E2);
    for (m, n) in [(2i64, 3i64), (3, 3), (3, 5), (5, 5)] {
        // draw families the same way the generator does, but keep the lines
        let fam_m: Vec<(Q, Q)> = (0..m).map(|_| (rng.rational(), rng.rational())).collect();
        let fam_n: Vec<(Q, Q)> = (0..n).map(|_| (rng.rational(), rng.rational())).collect();
        let mut pts = Vec::new();
        let mut degenerate = false;
        'outer: for (a1, b1) in &fam_m {
            for (a2, b2) in &fam_n {
                if a1 == a2 {
                    degenerate = true;
                    break 'outer;
                }
                let x = (b2 - b1) / (a1 - a2);
                let y = a1 * &x + b1;
                if pts.contains(&(x.clone(), y.clone())) {
                    degenerate = true;
                    break 'outer;
                }
                pts.push((x, y));
            }
        }
        if degenerate {
            continue;
        }
        let on_line = |line: &(Q, Q), p: &(Q, Q)| (&line.0 * &p.0 + &line.1) == p.1;
        for line in &fam_m {
            let count = pts.iter().filter(|p| on_line(line, p)).count();
            assert_eq!(count as i64, n, "component of the m-family misses its count");
        }
        for p in &pts {
            let owners = fam_m.iter().filter(|line| on_line(line, p)).count();
            assert_eq!(owners, 1, "a point lies on two components");
        }
    }
}

#[test]
fn curve_through_points_guaranteed_below_dimension() {
    // any dim_pi(k) - 1 points admit a degree-k curve
    let mut rng = Splitmix64::new(0x1EE7);
    for k in 1i64..=3 {
        let size = dim_pi(k) - 1;
        let mut pts: Vec<(Q, Q)> = Vec::new();
        while pts.len() < size {
            let p = rng.point();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let set = PointSet::new(pts).unwrap();
        let curve = curvesect::curves::curve_through_points(&set, k)
            .expect("a curve must exist below the dimension bound");
        assert!(!curve.is_zero());
        for p in set.iter() {
            assert!(curve.vanishes_at(p));
        }
    }
}
