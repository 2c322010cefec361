//! Acceptance suite: one test per verification criterion, each printing a
//! pass line and enforcing its stated runtime budget. All arithmetic is
//! exact; there are no tolerances anywhere.
//!
//! Run with `cargo test -p wavefront-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavefront_core::gl::{
    self, jacobson_morozov, killing_form, nilpotent_representative, orbit_partition,
    trace_pairing, DiagonalSemisimple,
};
use wavefront_core::linalg::{rat, rat_int, Matrix, Rat};
use wavefront_core::partition::{partitions_of, top_orbit, Partition};
use wavefront_core::spectrum::{arrange_columns, assumption_check, IsobaricDatum};
use wavefront_core::vanishing::{cai_sweep, finite_vanishing_sweep, OracleLimits};
use wavefront_core::whittaker::{neutral_semisimple, semi_whittaker, WhittakerPair};

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("acceptance {criterion}: PASS [{elapsed:.2?}]");
    assert!(elapsed < budget, "{criterion} exceeded its {budget:?} budget: {elapsed:?}");
}

/// All multisets of pairs (a, b) with a, b ≥ 1 and Σ a·b ≤ `max_total`,
/// nonempty, as canonically sorted sequences.
fn enumerate_data(max_total: usize) -> Vec<Vec<(usize, usize)>> {
    let mut pair_types = Vec::new();
    for a in 1..=max_total {
        for b in 1..=max_total / a {
            pair_types.push((a, b));
        }
    }
    fn rec(
        types: &[(usize, usize)],
        from: usize,
        budget: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for idx in from..types.len() {
            let (a, b) = types[idx];
            if a * b <= budget {
                current.push((a, b));
                rec(types, idx, budget - a * b, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&pair_types, 0, max_total, &mut Vec::new(), &mut out);
    out
}

/// The sorted-by-b closed form of the top orbit:
/// `[(a_1+…+a_r)^{b_r} (a_1+…+a_{r−1})^{b_{r−1}−b_r} ⋯ a_1^{b_1−b_2}]`.
fn top_orbit_closed_form(pairs: &[(usize, usize)]) -> Partition {
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|x, y| y.1.cmp(&x.1));
    let r = sorted.len();
    let prefix_a: Vec<usize> = sorted
        .iter()
        .scan(0usize, |acc, p| {
            *acc += p.0;
            Some(*acc)
        })
        .collect();
    let mut parts = Vec::new();
    for k in (0..r).rev() {
        let mult = if k == r - 1 { sorted[k].1 } else { sorted[k].1 - sorted[k + 1].1 };
        for _ in 0..mult {
            parts.push(prefix_a[k]);
        }
    }
    Partition::from_unsorted(parts)
}

#[test]
fn criterion_1_top_orbit_identity() {
    let start = Instant::now();
    let datasets = enumerate_data(12);
    assert!(!datasets.is_empty());
    for pairs in &datasets {
        // transpose(union of [b^a]) = Σ [a^b]
        let blocks: Vec<Partition> =
            pairs.iter().map(|&(a, b)| Partition::rect(b, a).unwrap()).collect();
        let via_union = Partition::union(blocks.iter()).transpose();
        let via_sum = top_orbit(pairs).unwrap();
        assert_eq!(via_union, via_sum, "identity fails for {pairs:?}");
        // …and both equal the column-size multiset of the arrangement
        let triples: Vec<(usize, usize, Rat)> =
            pairs.iter().map(|&(a, b)| (a, b, Rat::from_integer(0.into()))).collect();
        let datum = IsobaricDatum::from_triples(&triples).unwrap();
        assert_eq!(arrange_columns(&datum).sizes_partition(), via_sum);
        // …and the sorted-b closed form agrees
        assert_eq!(top_orbit_closed_form(pairs), via_sum, "closed form fails for {pairs:?}");
    }
    println!("  ({} datasets with n <= 12)", datasets.len());
    finish("criterion 1 (top-orbit partition identity, exhaustive n <= 12)", start, Duration::from_secs(30));
}

#[test]
fn criterion_2_example_columns() {
    let start = Instant::now();
    let datum: IsobaricDatum = "1:3:0,1:4:0,1:5:0".parse().unwrap();
    let cert = wavefront_core::spectrum::pipeline(&datum).unwrap();
    assert_eq!(cert.mu, part(&[3, 3, 3, 2, 1]));
    assert_eq!(cert.mu_transpose, part(&[5, 4, 3]));
    let arr = &cert.arrangement;
    let eta = arr.eta_order();
    assert_eq!(eta.len(), 5);
    // entry-for-entry: (cusp, exponent) per η-column
    let expected: Vec<Vec<(usize, Rat)>> = vec![
        vec![(0, rat_int(-1)), (1, rat(-3, 2)), (2, rat_int(-1))],
        vec![(0, rat_int(0)), (1, rat(-1, 2)), (2, rat_int(0))],
        vec![(0, rat_int(1)), (1, rat(1, 2)), (2, rat_int(1))],
        vec![(1, rat(3, 2)), (2, rat_int(2))],
        vec![(2, rat_int(-2))],
    ];
    for (eta_idx, want) in expected.iter().enumerate() {
        let col = &arr.columns()[eta[eta_idx]];
        let got: Vec<(usize, Rat)> =
            col.entries.iter().map(|e| (e.cusp, e.exponent.clone())).collect();
        assert_eq!(&got, want, "η_{} mismatch", eta_idx + 1);
    }
    finish("criterion 2 (inducing-data table of the rank-12 example)", start, Duration::from_secs(1));
}

#[test]
fn criterion_3_radical_formula() {
    let start = Instant::now();
    // neutral pairs and (s_n, u_λ) pairs, n ≤ 6
    for n in 1..=6 {
        for lambda in partitions_of(n) {
            let u = nilpotent_representative(&lambda);
            let neutral = WhittakerPair::new(neutral_semisimple(&lambda), u.clone()).unwrap();
            let by_def = neutral.omega_radical();
            let by_formula = neutral.nsu_formula();
            assert!(by_def.same_subspace(&by_formula), "neutral λ = {lambda:?}");
            // neutral pairs: the radical is exactly g^s_{≥2}
            let g2: Vec<Vec<Rat>> = neutral
                .grading()
                .at_least(&rat_int(2))
                .iter()
                .map(|&(i, j)| Matrix::unit(n, i, j).to_flat())
                .collect();
            let rows: Vec<Vec<Rat>> = by_def.basis().iter().map(Matrix::to_flat).collect();
            assert!(
                wavefront_core::linalg::same_span(&rows, &g2, n * n),
                "neutral radical is not g_2 for λ = {lambda:?}"
            );

            let (semi, _) = semi_whittaker(&lambda);
            assert!(semi.omega_radical().same_subspace(&semi.nsu_formula()), "s_n λ = {lambda:?}");
        }
    }
    // 50 pseudorandom Whittaker pairs per n ≤ 5
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for n in 1..=5usize {
        let mut produced = 0;
        while produced < 50 {
            let diag: Vec<Rat> =
                (0..n).map(|_| rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=2))).collect();
            let s = DiagonalSemisimple::new(diag);
            let grading = gl::grade_by(&s);
            let minus_two = rat_int(-2);
            let slots = grading.at(&minus_two).to_vec();
            let mut u = Matrix::zero(n, n);
            for &(i, j) in &slots {
                if rng.gen_bool(0.7) {
                    let numer = rng.gen_range(-2i64..=2);
                    u.set(i, j, rat(numer, rng.gen_range(1i64..=2)));
                }
            }
            let pair = WhittakerPair::new(s, u).expect("support chosen inside weight -2");
            assert!(
                pair.omega_radical().same_subspace(&pair.nsu_formula()),
                "random pair disagreement at n = {n}"
            );
            produced += 1;
        }
    }
    finish("criterion 3 (radical of omega_u = closed formula, both routes)", start, Duration::from_secs(120));
}

#[test]
fn criterion_4_sl2_and_orbit_roundtrips() {
    let start = Instant::now();
    for n in 1..=7 {
        for lambda in partitions_of(n) {
            let u = nilpotent_representative(&lambda);
            let triple = jacobson_morozov(&u).unwrap();
            assert!(triple.verify(), "sl2 relations fail for λ = {lambda:?}");
            assert_eq!(triple.f, u);
            assert_eq!(orbit_partition(&u).unwrap(), lambda, "roundtrip fails for λ = {lambda:?}");
        }
    }
    finish("criterion 4 (sl2 completions and Jordan-type roundtrips, n <= 7)", start, Duration::from_secs(60));
}

#[test]
fn criterion_5_weyl_vanishing_sweep() {
    let start = Instant::now();
    for n in 1..=7 {
        let sweep = cai_sweep(n, 8).unwrap();
        assert_eq!(sweep.failures, 0, "Weyl sweep found a failing pair at n = {n}");
        println!("  n = {n}: {} qualifying pairs, all pass", sweep.qualifying_pairs);
    }
    finish("criterion 5 (Weyl-level vanishing sweep, n <= 7)", start, Duration::from_secs(300));
}

#[test]
fn criterion_6_finite_vanishing_sweep() {
    let start = Instant::now();
    let limits = OracleLimits::default();
    for (n, q) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
        let sweep = finite_vanishing_sweep(n, q, &limits).unwrap();
        assert!(sweep.all_qualifying_zero, "nonzero Hom dimension at (n, q) = ({n}, {q})");
        assert!(sweep.sizes_sum_ok, "coset sizes do not sum to |GL_{n}(F_{q})|");
        let qualifying = sweep.lines.iter().filter(|l| l.qualifying).count();
        println!(
            "  (n, q) = ({n}, {q}): |G| = {}, {} pairs ({} qualifying, all zero)",
            sweep.group_order,
            sweep.lines.len(),
            qualifying
        );
    }
    finish("criterion 6 (finite double-coset vanishing sweep)", start, Duration::from_secs(300));
}

#[test]
fn criterion_7_assumption_boundaries() {
    let start = Instant::now();
    let datum = |triples: &[(usize, usize, Rat)]| IsobaricDatum::from_triples(triples).unwrap();
    // zero twists always pass
    assert!(assumption_check(&datum(&[
        (1, 3, rat_int(0)),
        (2, 4, rat_int(0)),
        (1, 5, rat_int(0)),
        (1, 1, rat_int(0))
    ]))
    .pass);
    // same parity: −1/2 and 1 fail; 0 and −1 pass
    let same = |d: Rat| datum(&[(1, 3, d), (1, 5, rat_int(0))]);
    assert!(!assumption_check(&same(rat(-1, 2))).pass);
    assert!(!assumption_check(&same(rat_int(1))).pass);
    assert!(assumption_check(&same(rat_int(0))).pass);
    assert!(assumption_check(&same(rat_int(-1))).pass);
    // odd/even ordered pair: +1/2 fails (half-open boundary); −1/2 and −3/2 pass
    let mixed = |d: Rat| datum(&[(1, 3, d), (1, 4, rat_int(0))]);
    assert!(!assumption_check(&mixed(rat(1, 2))).pass);
    assert!(assumption_check(&mixed(rat(-1, 2))).pass);
    assert!(assumption_check(&mixed(rat(-3, 2))).pass);
    finish("criterion 7 (twist assumption boundary probes)", start, Duration::from_secs(1));
}

#[test]
fn criterion_8_pairing_normalization() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for n in 1..=6usize {
        let lambdas = partitions_of(n);
        for t in 0..100 {
            let lambda = &lambdas[t % lambdas.len()];
            let u = nilpotent_representative(lambda);
            let x = Matrix::from_fn(n, n, |_, _| {
                rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
            });
            let lhs = trace_pairing(&u, &x).unwrap() * rat_int(2 * n as i64);
            let rhs = killing_form(&u, &x).unwrap();
            assert_eq!(lhs, rhs, "normalization fails at n = {n}, λ = {lambda:?}");
        }
    }
    finish("criterion 8 (trace pairing x 2n = Killing form on nilpotents)", start, Duration::from_secs(60));
}
