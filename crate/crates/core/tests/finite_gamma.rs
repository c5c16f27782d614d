use gammafactor::finite::deligne_lusztig::verify_finite_main;
use gammafactor::finite::lift::weyl_lifts;
use gammafactor::finite::torus::{character_orbits, cycles};
use gammafactor::finite::*;
use gammafactor::par::Exec;
use gammafactor::WeightList;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sweep_structure_for_small_fields() {
    for q in [3, 5, 7, 9] {
        let r = verify_finite_main(q, Exec::default()).unwrap();
        assert_eq!(r.sign_consistent_failures, 0, "q = {q}");
        assert!(r.shared_constituents_agree, "q = {q}");
        for c in &r.checks {
            let split = c.w_cycle_type == [1, 1];
            assert_eq!(c.pass, split, "q = {q}, {:?} {}", c.theta_exponents, c.constituent);
        }
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let a = verify_finite_main(5, Exec::Sequential).unwrap();
    let b = verify_finite_main(5, Exec::Parallel).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn every_irreducible_is_reached() {
    for q in [3, 5] {
        let t = gl2_character_table(q).unwrap();
        let r = verify_finite_main(q, Exec::Sequential).unwrap();
        for row in &t.table.rows {
            assert!(r.checks.iter().any(|c| c.constituent == row.label), "{} at q = {q}", row.label);
        }
    }
}

#[test]
fn orbit_counts_match_class_counts() {
    // Split: unordered pairs of characters of F_q^*. Coxeter: Frobenius orbits on characters of F_{q^2}^*.
    for q in [3u64, 5, 7] {
        let split = FiniteTorus::new(q, &[1, 1]).unwrap();
        let cox = FiniteTorus::new(q, &[2]).unwrap();
        assert_eq!(character_orbits(&split).len() as u64, q * (q - 1) / 2);
        assert_eq!(character_orbits(&cox).len() as u64, (q * q - 1 - (q - 1)) / 2 + (q - 1));
    }
}

#[test]
fn dixon_matches_classical_table_at_three() {
    let d = dixon_character_table(&FiniteGroup::gl2(3).unwrap()).unwrap();
    let c = gl2_character_table(3).unwrap();
    let perm = d.equivalent_to(&c.table).expect("tables agree up to permutation");
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..8).collect::<Vec<_>>());
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}

#[test]
fn gamma_rho_is_lift_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let families = [
        "1,0;0,1;1,0;0,1",
        "1,0;0,1;1,1;1,1",
        "2,0;0,2;1,1;1,1",
        "1,0,0;0,1,0;0,0,1;1,0,0;0,1,0;0,0,1",
        "1,1;1,1;1,0;0,1",
    ];
    let mut checked = 0;
    for (k, family) in families.iter().enumerate() {
        let rho = WeightList::parse(family).unwrap();
        for _ in 0..2 {
            let q = [3u64, 5][k % 2];
            let w = random_permutation(&mut rng, rho.rank());
            let Ok(lifts) = weyl_lifts(&rho, &w, 8) else { continue };
            let torus = FiniteTorus::for_permutation(q, &w).unwrap();
            let exps: Vec<i64> =
                (0..torus.cycle_type().len()).map(|i| rng.random_range(0..torus.component_order(i)) as i64).collect();
            let th = FiniteTorusCharacter::new(&torus, &exps).unwrap();
            let psi = AdditiveCharacter::standard(q).unwrap();
            let values: Vec<GammaValue> = lifts
                .iter()
                .map(|l| gamma_rho_finite_with_lift(&rho, &w, l, &th, &psi).unwrap())
                .collect();
            assert!(values.len() >= 2, "{family} {w:?}");
            assert!(values.windows(2).all(|v| v[0] == v[1]), "{family} {w:?} {exps:?}");
            checked += 1;
        }
    }
    assert!(checked >= 5);
    assert_eq!(cycles(&[0, 1]).unwrap().len(), 2);
}

#[test]
fn torus_gamma_json_shape() {
    let t = FiniteTorus::new(3, &[2]).unwrap();
    let g = torus_gamma(&t, &FiniteTorusCharacter::trivial(&t), &AdditiveCharacter::standard(3).unwrap()).unwrap();
    let v = serde_json::to_value(&g).unwrap();
    assert_eq!(v["q_half_power"], -2);
    assert_eq!(v["cyc"]["N"], 1);
    assert_eq!(g.render(), "1/3");
}
