use casimir::epstein::{z, z_closed_even, z_odd};
use casimir::oracle::{
    p_from_z, p_k_direct, r_dn_enumerate, r_dn_formula, representation_counts, z_direct,
    z_from_p, z_from_representation_counts,
};
use casimir::specfun::{dirichlet_beta, riemann_zeta};
use casimir::TruncationPolicy;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn closed_and_odd_forms_match_lattice_sums() {
    let p = TruncationPolicy::default();
    for (d, s) in [(2, 3.0), (4, 3.0), (6, 4.0), (8, 5.0), (3, 2.0), (5, 3.0), (7, 4.0)] {
        let direct = z_direct(d, s, 400).unwrap();
        let closed = z(d, s, &p).unwrap().total;
        println!(
            "d={d} s={s}: closed {closed:.15e} direct {:.15e} bound {:.3e} rel {:.3e}",
            direct.value,
            direct.tail_bound,
            rel(closed, direct.value)
        );
        assert!(direct.contains(closed, 1e-12));
        assert!(rel(closed, direct.value) < 1e-6);
    }
}

#[test]
fn odd_forms_match_at_off_casimir_points() {
    let p = TruncationPolicy::default();
    for (d, s) in [(3, 2.5), (3, 3.0), (5, 3.5), (7, 4.5)] {
        let direct = z_direct(d, s, 200).unwrap();
        let got = z_odd(d, s, &p).unwrap().total;
        assert!(direct.contains(got, 1e-12), "d={d} s={s}");
        assert!(rel(got, direct.value) < 1e-8, "d={d} s={s}: {}", rel(got, direct.value));
    }
}

#[test]
fn two_dimensional_closed_form_at_radius_200() {
    let direct = z_direct(2, 3.0, 200).unwrap();
    let want = 4.0 * riemann_zeta(3.0).unwrap() * dirichlet_beta(3.0).unwrap();
    assert!(direct.contains(want, 1e-13));
    assert_eq!(z_closed_even(2, 3.0).unwrap(), want);
}

#[test]
fn formulas_equal_enumeration() {
    for d in [2, 4, 6, 8] {
        for n in 1..=200 {
            assert_eq!(r_dn_formula(d, n).unwrap(), r_dn_enumerate(d, n).unwrap(), "d={d} n={n}");
        }
    }
}

#[test]
fn six_dimensional_chain_from_divisor_formula() {
    let radius = 100usize;
    let mut counts = vec![1u64];
    counts.extend((1..=(radius * radius) as u64).map(|n| r_dn_formula(6, n).unwrap()));
    let s = 4.0;
    let sum = z_from_representation_counts(6, s, &counts).unwrap();
    let want = 16.0 * dirichlet_beta(s).unwrap() * riemann_zeta(s - 2.0).unwrap()
        - 4.0 * dirichlet_beta(s - 2.0).unwrap() * riemann_zeta(s).unwrap();
    assert!(sum.contains(want, 1e-12), "{} vs {want} ± {}", sum.value, sum.tail_bound);
}

#[test]
fn ball_sums_match_box_enumeration() {
    // Plain nested loops over the ball |n| ≤ 30 in three dimensions.
    let r = 30i64;
    let s = 2.5;
    let mut brute = 0.0;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let n2 = a * a + b * b + c * c;
                if n2 != 0 && n2 <= r * r {
                    brute += (n2 as f64).powf(-s);
                }
            }
        }
    }
    let counts = representation_counts(3, (r * r) as usize, false);
    let partial: f64 = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| c as f64 * (n as f64).powf(-s))
        .sum();
    assert!(rel(partial, brute) < 1e-13);
}

#[test]
fn orthant_sums_follow_binomial_relations() {
    let s = 3.0;
    let radius = 400;
    let zs: Vec<_> = (1..=3).map(|m| z_direct(m, s, radius).unwrap()).collect();
    let ps: Vec<_> = (1..=3).map(|k| p_k_direct(k, s, radius).unwrap()).collect();
    let z_vals: Vec<f64> = zs.iter().map(|r| r.value).collect();
    let p_vals: Vec<f64> = ps.iter().map(|r| r.value).collect();
    for k in 1..=3u32 {
        let from_z = p_from_z(k, &z_vals).unwrap();
        let slack: f64 = zs.iter().map(|r| r.tail_bound).sum::<f64>() + ps[(k - 1) as usize].tail_bound;
        assert!((from_z - p_vals[(k - 1) as usize]).abs() <= slack + 1e-13, "P_{k}");
        let from_p = z_from_p(k, &p_vals).unwrap();
        let slack: f64 = ps.iter().map(|r| r.tail_bound * 8.0).sum::<f64>() + zs[(k - 1) as usize].tail_bound;
        assert!((from_p - z_vals[(k - 1) as usize]).abs() <= slack + 1e-13, "Z_{k}");
    }
}

#[test]
fn partial_count_sums_approach_the_lattice_sum() {
    let s = 3.0;
    let full = z_direct(4, s, 100).unwrap();
    let mut prev = f64::INFINITY;
    for n_cap in [100u64, 1_000, 10_000] {
        let partial: f64 = (1..=n_cap)
            .map(|n| r_dn_enumerate(4, n).unwrap() as f64 * (n as f64).powf(-s))
            .sum();
        let gap = full.value - partial;
        assert!(gap > 0.0 && gap < prev);
        prev = gap;
    }
    assert!(prev < full.tail_bound + 1e-3);
}
