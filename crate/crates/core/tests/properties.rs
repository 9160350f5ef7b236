use infolattice::circuit::random_clifford_circuit;
use infolattice::lattice::{compute_lattice, fold, summarize, DEFAULT_GAP_THRESHOLD};
use infolattice::models::{embed_qutrit_to_spins, t_doped_state, BlockLayout, TDopedSpec};
use infolattice::pauli::{rank, row_reduce, Pauli};
use infolattice::rng;
use infolattice::state::{haar_random, haar_unitary, statevector_from_tableau};
use infolattice::witness::{witness_long_range, NonstabilizernessWitness, WitnessOptions};
use infolattice::{InfoLattice, PauliString, PureState, StabilizerTableau, SupportInterval};
use proptest::prelude::*;

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![
        Just(Pauli::I),
        Just(Pauli::X),
        Just(Pauli::Y),
        Just(Pauli::Z)
    ]
}

fn pauli_string(len: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(pauli(), len), 0u8..4)
        .prop_map(|(ps, ph)| PauliString::from_paulis(&ps).with_phase(ph))
}

fn string_pair() -> impl Strategy<Value = (PauliString, PauliString)> {
    (1usize..70).prop_flat_map(|len| (pauli_string(len), pauli_string(len)))
}

fn string_set() -> impl Strategy<Value = Vec<PauliString>> {
    (1usize..12, 1usize..16).prop_flat_map(|(len, n)| prop::collection::vec(pauli_string(len), n))
}

/// Haar qubits, Haar qutrits, stabilizer, T-doped and embedded qutrit states.
fn random_state(kind: u8, seed: u64) -> PureState {
    let mut g = rng::from_seed(seed);
    match kind % 5 {
        0 => haar_random(vec![2; 4 + (seed % 5) as usize], &mut g).unwrap(),
        1 => haar_random(vec![3; 3 + (seed % 3) as usize], &mut g).unwrap(),
        2 => {
            let c = random_clifford_circuit(
                6 + 2 * (seed % 3) as usize,
                1 + (seed % 12) as usize,
                seed,
            )
            .unwrap();
            statevector_from_tableau(&StabilizerTableau::from_circuit(&c).unwrap()).unwrap()
        }
        3 => t_doped_state(&TDopedSpec {
            len: 8,
            blocks: 2,
            clifford_layers_per_block: 4,
            t_gates_per_block: 2,
            seed,
            layout: BlockLayout::Spatial,
        })
        .unwrap(),
        _ => embed_qutrit_to_spins(&haar_random(vec![3; 3], &mut g).unwrap()).unwrap(),
    }
}

fn max_diff(a: &InfoLattice, b: &InfoLattice) -> f64 {
    a.sites()
        .zip(b.sites())
        .map(|(x, y)| (x.2 - y.2).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn products_differ_by_the_commutation_sign((a, b) in string_pair()) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        let expected = if a.commutes(&b).unwrap() { 0 } else { 2 };
        prop_assert_eq!((ab.phase() + 4 - ba.phase()) % 4, expected);
        prop_assert_eq!(ab.clone().with_phase(0), ba.with_phase(0));
    }

    #[test]
    fn multiplication_is_associative((a, b) in string_pair(), c_seed in any::<u64>()) {
        let len = a.len();
        let c = PauliString::from_paulis(
            &(0..len).map(|k| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][((c_seed >> (k % 32 * 2)) & 3) as usize])
                .collect::<Vec<_>>(),
        );
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn row_reduce_is_idempotent(set in string_set()) {
        let (basis, r) = row_reduce(&set).unwrap();
        let (again, r2) = row_reduce(&basis).unwrap();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(again, basis);
        prop_assert!(r <= 2 * set[0].len());
    }

    #[test]
    fn rank_ignores_order_and_row_operations(set in string_set(), rot in 0usize..16, i in 0usize..16, j in 0usize..16) {
        let r = rank(&set).unwrap();
        let mut permuted = set.clone();
        let k = rot % permuted.len();
        permuted.rotate_left(k);
        permuted.reverse();
        prop_assert_eq!(rank(&permuted).unwrap(), r);
        let (i, j) = (i % set.len(), j % set.len());
        if i != j {
            let mut mixed = set.clone();
            mixed[i] = mixed[i].multiply(&set[j]).unwrap();
            prop_assert_eq!(rank(&mixed).unwrap(), r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn subgroup_rank_grows_with_the_interval(seed in any::<u64>(), a in 0usize..8, b in 0usize..8) {
        let t = StabilizerTableau::from_circuit(&random_clifford_circuit(8, 1 + (seed % 10) as usize, seed).unwrap()).unwrap();
        let (a, b) = (a.min(b), a.max(b));
        let inner = t.subgroup_rank(SupportInterval::new(a, b, 8).unwrap()).unwrap();
        prop_assert!(inner <= b - a + 1);
        if a > 0 {
            prop_assert!(t.subgroup_rank(SupportInterval::new(a - 1, b, 8).unwrap()).unwrap() >= inner);
        }
        if b < 7 {
            prop_assert!(t.subgroup_rank(SupportInterval::new(a, b + 1, 8).unwrap()).unwrap() >= inner);
        }
    }

    #[test]
    fn complementary_intervals_have_equal_entropy(kind in 0u8..5, seed in any::<u64>()) {
        let s = random_state(kind, seed);
        let len = s.len();
        for k in 0..len - 1 {
            let a = s.entropy(SupportInterval::new(0, k, len).unwrap()).unwrap();
            let b = s.entropy(SupportInterval::new(k + 1, len - 1, len).unwrap()).unwrap();
            prop_assert!((a - b).abs() <= 1e-9, "S([0,{}]) = {} vs {}", k, a, b);
        }
    }

    #[test]
    fn entropy_ignores_unitaries_inside_or_outside(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let mut g = rng::from_seed(seed);
        let s = haar_random(vec![2; 6], &mut g).unwrap();
        let (a, b) = (a.min(b), a.max(b));
        let iv = SupportInterval::new(a, b, 6).unwrap();
        let before = s.entropy(iv).unwrap();
        let inside: Vec<usize> = (a..=b).take(3).collect();
        let outside: Vec<usize> = (0..6).filter(|q| !iv.contains(*q)).take(3).collect();
        for sites in [inside, outside] {
            if sites.is_empty() {
                continue;
            }
            let u = haar_unitary(1 << sites.len(), &mut g);
            let after = s.apply_on_sites(&sites, &u).unwrap().entropy(iv).unwrap();
            prop_assert!((after - before).abs() <= 1e-9);
        }
    }

    #[test]
    fn lattice_is_bounded_and_sums_to_the_total(kind in 0u8..5, seed in any::<u64>()) {
        let s = random_state(kind, seed);
        let lat = compute_lattice(&s).unwrap();
        let bound = 2.0 * (lat.max_local_dim() as f64).log2();
        for (n, l, v) in lat.sites() {
            prop_assert!((-1e-8..=bound + 1e-8).contains(&v), "i({}, {}) = {}", n, l, v);
        }
        let total: f64 = s.dims().iter().map(|&d| (d as f64).log2()).sum();
        prop_assert!((lat.total() - total).abs() <= 1e-8);
        let sum = summarize(&lat, DEFAULT_GAP_THRESHOLD);
        let per_scale: f64 = sum.info_per_scale.iter().sum();
        prop_assert!((per_scale - total).abs() <= 1e-8);
        let middle: f64 = sum.info_per_scale[..s.len() / 2].iter().sum();
        prop_assert!((sum.omega - middle).abs() <= 1e-12);
        prop_assert!((sum.omega + sum.gamma - total).abs() <= 1e-8);
    }

    #[test]
    fn folding_conserves_total_information(kind in 0u8..5, seed in any::<u64>()) {
        let s = random_state(kind, seed);
        let before = compute_lattice(&s).unwrap().total();
        let after = compute_lattice(&fold(&s).unwrap()).unwrap().total();
        prop_assert!((before - after).abs() <= 1e-8);
    }

    #[test]
    fn mirrored_state_has_the_mirrored_lattice(kind in 0u8..5, seed in any::<u64>()) {
        let s = random_state(kind, seed);
        let d = max_diff(&compute_lattice(&s.reflected()).unwrap(), &compute_lattice(&s).unwrap().reflected());
        prop_assert!(d <= 1e-8, "mirror differs by {}", d);
    }

    #[test]
    fn stabilizer_routes_agree(seed in any::<u64>(), len in 2usize..9, layers in 1usize..20) {
        let t = StabilizerTableau::from_circuit(&random_clifford_circuit(len, layers, seed).unwrap()).unwrap();
        let s = statevector_from_tableau(&t).unwrap();
        prop_assert!(max_diff(&t.integer_info_lattice().unwrap(), &compute_lattice(&s).unwrap()) <= 1e-8);
        for a in 0..len {
            for b in a..len {
                let iv = SupportInterval::new(a, b, len).unwrap();
                prop_assert!((t.stabilizer_entropy(iv).unwrap() - s.entropy(iv).unwrap()).abs() <= 1e-10);
            }
        }
    }
}

proptest! {
    #[test]
    fn raising_tolerance_never_creates_a_witness(
        gamma in 0.0f64..4.0,
        localized in any::<bool>(),
        tols in prop::collection::vec(1e-9f64..0.5, 2..6),
    ) {
        let mut tols = tols;
        tols.sort_by(f64::total_cmp);
        let mut sum = summarize(&compute_lattice(&PureState::zero(4, 2).unwrap()).unwrap(), DEFAULT_GAP_THRESHOLD);
        sum.gamma = gamma;
        sum.localized = localized;
        let local = NonstabilizernessWitness { detected: false, max_deviation: 0.0, site: None };
        let mut prev = true;
        for tol in tols {
            let v = witness_long_range(&sum, &local, &WitnessOptions { tol, require_origin: false }).unwrap();
            prop_assert!(!v.long_range_witnessed || (v.localized && !v.gamma_is_integer));
            prop_assert!(!v.long_range_witnessed || v.has_nonstabilizerness);
            prop_assert!(prev || !v.long_range_witnessed);
            prev = v.long_range_witnessed;
        }
    }
}
