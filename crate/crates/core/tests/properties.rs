use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use sunbose_core::coherent::{
    complete_unitary, covariance_residual, dual_orthogonality_residual, haar_frame, wedge_coordinates,
};
use sunbose_core::combinatorics::{permutations_with_sign, sort_with_sign};
use sunbose_core::fock::casimir_op;
use sunbose_core::linalg::unitarity_residual;
use sunbose_core::young::{
    irrep_basis_vector, irrep_basis_vector_grouped, irrep_basis_vector_with, irrep_subspace, weyl_dimension,
    young_diagram,
};
use sunbose_core::{Complex, FockVector, IrrepLabel, LabeledMonomial, SchwingerRealization, SectorBasis, Symmetrizer};

/// Weyl's product formula over the row lengths, as an exact fraction.
fn weyl_product(n: usize, rows: &[usize]) -> u128 {
    let lam = |i: usize| rows.get(i).copied().unwrap_or(0) as i128;
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        for j in i + 1..n {
            num *= lam(i) - lam(j) + (j - i) as i128;
            den *= (j - i) as i128;
        }
    }
    assert_eq!(num % den, 0);
    (num / den) as u128
}

/// Counts semistandard tableaux of the given shape with entries in 0..n.
fn count_ssyt(n: usize, rows: &[usize]) -> u128 {
    let cells: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    fn fill(k: usize, cells: &[(usize, usize)], n: usize, grid: &mut Vec<Vec<usize>>) -> u128 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for v in 0..n {
            if c > 0 && grid[r][c - 1] > v {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            total += fill(k + 1, cells, n, grid);
        }
        total
    }
    let mut grid: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();
    fill(0, &cells, n, &mut grid)
}

fn label_strategy(max_n: usize, max_c: u32) -> impl Strategy<Value = IrrepLabel> {
    (2..=max_n)
        .prop_flat_map(move |n| proptest::collection::vec(0..=max_c, n - 1).prop_map(move |c| (n, c)))
        .prop_map(|(n, c)| IrrepLabel::new(n, c).unwrap())
}

/// A label together with a random filling of its diagram.
fn filled_strategy(max_n: usize, max_c: u32) -> impl Strategy<Value = (IrrepLabel, Vec<Vec<usize>>)> {
    label_strategy(max_n, max_c).prop_flat_map(|l| {
        let rows = young_diagram(&l).row_lengths().to_vec();
        let n = l.n();
        let fill = rows.into_iter().map(move |len| proptest::collection::vec(0..n, len)).collect::<Vec<_>>();
        (Just(l), fill)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sorting_sign_is_permutation_parity(n in 1usize..7) {
        for (p, s) in permutations_with_sign(n).unwrap() {
            let mut q = p.clone();
            prop_assert_eq!(sort_with_sign(&mut q), Some(s));
            prop_assert_eq!(q, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn hook_content_matches_weyl_product(l in label_strategy(6, 5)) {
        let rows = young_diagram(&l).row_lengths().to_vec();
        prop_assert_eq!(weyl_dimension(&l).unwrap(), weyl_product(l.n(), &rows));
    }

    #[test]
    fn hook_content_counts_tableaux(l in label_strategy(4, 2)) {
        let rows = young_diagram(&l).row_lengths().to_vec();
        prop_assert_eq!(weyl_dimension(&l).unwrap(), count_ssyt(l.n(), &rows));
    }

    #[test]
    fn grouped_symmetrizer_matches_explicit((l, rows) in filled_strategy(4, 2)) {
        let sector = SectorBasis::new(&l).unwrap();
        let m = LabeledMonomial::new(&young_diagram(&l), rows).unwrap();
        for norm in [Symmetrizer::Sum, Symmetrizer::Average] {
            let a = irrep_basis_vector_with(&m, &sector, norm).unwrap();
            let b = irrep_basis_vector_grouped(&m, &sector, norm).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                prop_assert!((x - y).norm() <= 1e-12 * (1.0 + x.norm()));
            }
        }
    }

    #[test]
    fn symmetrizing_twice_multiplies_by_row_factorials((l, rows) in filled_strategy(3, 2)) {
        let d = young_diagram(&l);
        let sector = SectorBasis::new(&l).unwrap();
        let m = LabeledMonomial::new(&d, rows.clone()).unwrap();
        let once = irrep_basis_vector(&m, &sector).unwrap();
        // second pass: symmetrize every permuted filling produced by the first
        let mut twice = FockVector::zeros(sector.dim());
        let perms: Vec<Vec<Vec<usize>>> = d
            .row_lengths()
            .iter()
            .map(|&r| permutations_with_sign(r).unwrap().map(|(p, _)| p).collect())
            .collect();
        let mut pick = vec![0usize; perms.len()];
        loop {
            let permuted: Vec<Vec<usize>> = rows
                .iter()
                .zip(&pick)
                .zip(&perms)
                .map(|((row, &k), ps)| ps[k].iter().map(|&i| row[i]).collect())
                .collect();
            let pm = LabeledMonomial::new(&d, permuted).unwrap();
            twice.add_scaled(&irrep_basis_vector(&pm, &sector).unwrap(), Complex::new(1.0, 0.0)).unwrap();
            let mut h = 0;
            while h < pick.len() {
                pick[h] += 1;
                if pick[h] < perms[h].len() {
                    break;
                }
                pick[h] = 0;
                h += 1;
            }
            if h == pick.len() {
                break;
            }
        }
        let factor: f64 = d.row_lengths().iter().map(|&r| (1..=r).product::<usize>() as f64).product();
        // equal up to summation roundoff (amplitudes are integers times sqrt(n!))
        let expect = once.scaled(Complex::new(factor, 0.0));
        for (x, y) in twice.amplitudes().iter().zip(expect.amplitudes()) {
            prop_assert!((x - y).norm() <= 1e-12 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn frame_geometry(seed in any::<u64>(), n in 2usize..=5) {
        let f = haar_frame(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(f.gram_residual() < 1e-12);
        prop_assert!(wedge_coordinates(&f).norm_residual() < 1e-12);
        prop_assert!(dual_orthogonality_residual(&f) < 1e-12);
        let u = complete_unitary(&f);
        prop_assert!(unitarity_residual(&u) < 1e-12);
        prop_assert!((u.determinant() - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_close_and_casimirs_are_exact(l in label_strategy(4, 2)) {
        prop_assume!(SectorBasis::new(&l).unwrap().dim() <= 200);
        let real = SchwingerRealization::new(&l).unwrap();
        prop_assert!(real.closure_residual().unwrap() < 1e-11);
        for q in &real.generators {
            prop_assert!(q.hermiticity_residual() < 1e-13);
        }
        for alpha in 1..l.n() {
            let cas = casimir_op(alpha, &real.sector).unwrap();
            let expect = Complex::new(f64::from(l.count(alpha)), 0.0);
            prop_assert!(cas.is_diagonal());
            for s in 0..real.sector.dim() {
                prop_assert_eq!(cas.get(s, s), expect);
            }
            for q in &real.generators {
                prop_assert_eq!(q.commutator(&cas).unwrap().nnz(), 0);
            }
        }
    }

    #[test]
    fn irrep_subspace_is_invariant_with_weyl_dimension(l in label_strategy(4, 2)) {
        let sector = SectorBasis::new(&l).unwrap();
        prop_assume!(sector.dim() <= 120);
        let real = SchwingerRealization::new(&l).unwrap();
        let sub = irrep_subspace(&sector).unwrap();
        prop_assert_eq!(sub.dim as u128, weyl_dimension(&l).unwrap());
        prop_assert!(sub.invariance_residual(&real.generators) < 1e-10);
        let (_, spread) = sub.scalar_spread(&real.quadratic_casimir().unwrap());
        prop_assert!(spread < 1e-9);
    }

    #[test]
    fn coherent_states_transform_covariantly(l in label_strategy(3, 2), seed in any::<u64>()) {
        let real = SchwingerRealization::new(&l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = haar_frame(l.n(), &mut rng).unwrap();
        let theta: Vec<f64> = (0..l.n() * l.n() - 1).map(|_| StandardNormal.sample(&mut rng)).collect();
        prop_assert!(covariance_residual(&f, &theta, &real).unwrap() < 1e-9);
    }
}
