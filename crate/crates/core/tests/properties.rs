use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgares_core::comb::{
    cone_deconvolve, cone_morse_matching, ideal_from_cone_complex, is_cone_fvector, kruskal_katona_check,
    morse_quotient, SimplicialComplex,
};
use dgares_core::complexes::{
    betti_table, check_subadditivity, is_minimal, is_resolution, minimal_resolution, minimize_with, scarf_complex,
    scarf_faces, squarefree_part, t_vector, taylor_complex, Element, PivotOrder, SubadditivityMode,
};
use dgares_core::corpus::{random_cone_complex, random_ideal, random_squarefree_ideal};
use dgares_core::dga::{
    check_axioms, check_dga_axioms, hilbert_cone_check, is_supportive, relabel, scaled_dga, taylor_multiplication,
    transfer_multiplication,
};
use dgares_core::monomial::{lcm_lattice, polarize, LatticeIso, MonomialIdeal};
use dgares_core::scalar::int;

fn ideal(seed: u64) -> MonomialIdeal {
    random_ideal(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5)
}

fn squarefree(seed: u64) -> MonomialIdeal {
    random_squarefree_ideal(&mut ChaCha8Rng::seed_from_u64(seed), 5, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn taylor_differential_squares_to_zero(seed in any::<u64>()) {
        let t = taylor_complex(&ideal(seed)).unwrap();
        prop_assert!(t.d_squared_is_zero());
    }

    #[test]
    fn minimization(seed in any::<u64>()) {
        let i = ideal(seed);
        let r = minimal_resolution(&i).unwrap();
        prop_assert!(r.minimal.d_squared_is_zero());
        prop_assert!(r.transfer.verify(&r.taylor, &r.minimal).is_ok());
        prop_assert!(is_resolution(&r.minimal, &i));
        prop_assert!(is_minimal(&r.minimal));
        let (other, transfer) = minimize_with(&r.taylor, PivotOrder::HighestFirst).unwrap();
        prop_assert_eq!(other.ranks(), r.minimal.ranks());
        prop_assert!(transfer.verify(&r.taylor, &other).is_ok());
    }

    #[test]
    fn betti_degrees_and_scarf(seed in any::<u64>()) {
        let i = ideal(seed);
        let betti = betti_table(&i).unwrap();
        let lattice = lcm_lattice(&i);
        prop_assert!(betti.degrees().iter().all(|a| lattice.contains(a)));
        for w in scarf_faces(&i).unwrap() {
            prop_assert!(betti.get(w.len(), &i.lcm_of(w.0)) >= 1);
        }
        if i.is_strongly_generic() {
            let f = scarf_complex(&i).unwrap().f_vector();
            prop_assert_eq!(betti.totals().iter().map(|&x| x as u64).collect::<Vec<_>>(), f.0);
        }
        let t = t_vector(&betti);
        prop_assert!(check_subadditivity(&t, SubadditivityMode::FirstStep).passes());
    }

    #[test]
    fn taylor_and_transfer_products(seed in any::<u64>()) {
        let i = ideal(seed);
        let r = minimal_resolution(&i).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        prop_assert!(check_dga_axioms(&mt).passes_all());
        prop_assert!(is_supportive(&mt));
        let m = transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal)).unwrap();
        prop_assert!(check_axioms(&m, false).is_multiplication());
    }

    #[test]
    fn squarefree_multiplications_are_supportive(seed in any::<u64>()) {
        let i = squarefree(seed);
        let r = minimal_resolution(&i).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        let m = transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal)).unwrap();
        prop_assert!(is_supportive(&m));
    }

    #[test]
    fn relabel_keeps_the_axioms(seed in any::<u64>()) {
        let i = ideal(seed);
        let p = polarize(&i);
        let r = minimal_resolution(&p.ideal).unwrap();
        let mt = taylor_multiplication(Arc::new(r.taylor.clone())).unwrap();
        let m = transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal)).unwrap();
        let back = relabel(&m, &p.ideal, &p.lattice_iso(), &i).unwrap();
        prop_assert_eq!(check_dga_axioms(&m).outcomes(), check_dga_axioms(&back).outcomes());
        prop_assert!(is_resolution(back.complex(), &i));
        prop_assert!(is_minimal(back.complex()));
        let same = relabel(&m, &p.ideal, &LatticeIso::identity(&lcm_lattice(&p.ideal)), &p.ideal).unwrap();
        prop_assert_eq!(same.table(), m.table());
    }

    #[test]
    fn squarefree_part_is_linear(seed in any::<u64>(), c in -5i64..=5) {
        let i = squarefree(seed);
        let t = taylor_complex(&i).unwrap();
        let g = t.len() - 1;
        let top = Element::basis(&t, g);
        let f = top.shift(&i.lcm());
        let (m, f0) = squarefree_part(&t, &f).unwrap();
        prop_assert_eq!(f0.shift(&m), f.clone());
        let (m2, f2) = squarefree_part(&t, &f.scale(&int(c))).unwrap();
        prop_assert_eq!(m2, m);
        prop_assert_eq!(f2, f0.scale(&int(c)));
    }

    #[test]
    fn cone_fvectors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let delta = random_cone_complex(&mut rng, 7);
        let f = delta.f_vector();
        prop_assert!(kruskal_katona_check(&f));
        prop_assert!(is_cone_fvector(&f));
        let apex = delta.is_cone().unwrap();
        let base: Vec<u64> = cone_deconvolve(&f).unwrap().0;
        let link = SimplicialComplex::from_faces(
            delta.num_vertices(),
            delta.faces().filter(|w| !w.contains(apex)).map(|w| w.0),
        ).unwrap();
        let mut expected = link.f_vector().0;
        while expected.len() > 1 && *expected.last().unwrap() == 0 {
            expected.pop();
        }
        prop_assert_eq!(base, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn scaling_gives_a_minimal_dga(seed in any::<u64>()) {
        let i = random_ideal(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4);
        let s = scaled_dga(&i).unwrap();
        prop_assert!(is_resolution(&s.complex, &s.ideal));
        prop_assert!(is_minimal(&s.complex));
        prop_assert!(check_dga_axioms(&s.multiplication).passes_all());
        prop_assert!(hilbert_cone_check(&s.multiplication).unwrap().passes());
    }

    #[test]
    fn cone_pipeline(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let delta = random_cone_complex(&mut rng, 6);
        let ideal = ideal_from_cone_complex(&delta).unwrap();
        let t = Arc::new(taylor_complex(&ideal).unwrap());
        let m = cone_morse_matching(&ideal, &delta, delta.is_cone().unwrap()).unwrap();
        let q = morse_quotient(&taylor_multiplication(t).unwrap(), &m).unwrap();
        prop_assert!(is_resolution(&q.complex, &ideal));
        prop_assert!(check_dga_axioms(&q.multiplication).passes_all());
        prop_assert!(hilbert_cone_check(&q.multiplication).unwrap().passes());
        prop_assert_eq!(q.complex.ranks().iter().map(|&x| x as u64).collect::<Vec<_>>(), delta.f_vector().0);
    }
}
