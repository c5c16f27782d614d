//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use gammafactor::algebra::rational::{int, Rational};
use gammafactor::algebra::CyclotomicNumber;
use gammafactor::crystal::{two_by_two_identity, verify_weyl_action};
use gammafactor::finite::torus::character_orbits;
use gammafactor::finite::*;
use gammafactor::padic::fourier::{fourier_rho, fourier_rho_numeric, same_lattice_function};
use gammafactor::padic::*;
use gammafactor::par::Exec;
use gammafactor::WeightList;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn finite_main_literal() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut witnesses = Vec::new();
    for q in [3, 5] {
        let r = match verify_finite_main(q, Exec::Parallel) {
            Ok(r) => r,
            Err(e) => return (false, format!("q = {q}: {e}")),
        };
        total += r.checks.len();
        for f in &r.failures {
            witnesses.push(format!(
                "q={} w={:?} theta={:?} {}: group {} vs expected {}",
                f.q,
                f.w_cycle_type,
                f.theta_exponents,
                f.constituent,
                f.gamma_group.render(),
                f.expected.render()
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = witnesses.is_empty() && secs < 60.0;
    let mut msg = format!("{total} constituent checks, {} failures, {secs:.1}s", witnesses.len());
    for w in witnesses.iter().take(4) {
        msg.push_str("\n    witness: ");
        msg.push_str(w);
    }
    (ok, msg)
}

fn gl1_gamma() -> Outcome {
    let mut bad = Vec::new();
    for q in [3u64, 5, 7, 9] {
        let t = FiniteTorus::new(q, &[1]).unwrap();
        let psi = AdditiveCharacter::standard(q).unwrap();
        for th in character_orbits(&t) {
            let g = torus_gamma(&t, &th, &psi).unwrap();
            if th.exponents().iter().all(|&e| e == 0) {
                let scaled = &g.exact() * &sqrt_q(q).unwrap();
                if scaled != CyclotomicNumber::from_integer(1) {
                    bad.push(format!("q={q} trivial: {}", g.render()));
                }
            } else if (g.modulus() - 1.0).abs() >= 1e-10 {
                bad.push(format!("q={q} theta={:?}: |gamma| = {}", th.exponents(), g.modulus()));
            }
        }
    }
    let t = FiniteTorus::new(3, &[2]).unwrap();
    let g = torus_gamma(&t, &FiniteTorusCharacter::trivial(&t), &AdditiveCharacter::standard(3).unwrap()).unwrap();
    if g.to_rational() != Some(Rational::new(1.into(), 3.into())) {
        bad.push(format!("cycle type (2), q=3: {}", g.render()));
    }
    (bad.is_empty(), if bad.is_empty() { "q in {3,5,7,9}; cycle type (2) at q=3 gives 1/3".into() } else { bad.join("; ") })
}

fn character_tables() -> Outcome {
    let d = dixon_character_table(&FiniteGroup::gl2(3).unwrap()).unwrap();
    let t3 = gl2_character_table(3).unwrap();
    let same = d.equivalent_to(&t3.table).is_some();
    let mut orth = Vec::new();
    for q in [3, 5] {
        if let Err(e) = gl2_character_table(q).unwrap().table.check_orthogonality() {
            orth.push(format!("q={q}: {e}"));
        }
    }
    if let Err(e) = d.check_orthogonality() {
        orth.push(format!("dixon: {e}"));
    }
    (same && orth.is_empty(), format!("dixon = classical up to permutation: {same}; orthogonality failures: {}", orth.len()))
}

fn crystal() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut jac = 0;
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let r = verify_weyl_action(m, n, 25, 2024, Exec::Parallel).unwrap();
        failures += r.failures.len();
        jac += r.checks.jacobian;
        if r.trials != 25 {
            failures += 1;
        }
    }
    let sym = two_by_two_identity().unwrap_or(false);
    let secs = start.elapsed().as_secs_f64();
    (failures == 0 && sym && secs < 120.0, format!("{failures} failures over 4 shapes, {jac} Jacobian checks, symbolic 2x2: {sym}, {secs:.1}s"))
}

fn padic_oracle() -> Outcome {
    let n = Normalization::default();
    let rho = WeightList::standard(1);
    let mut cases = Vec::new();
    for p in [2u64, 3, 5] {
        for z in [c(1.0, 0.0), c(0.7, 0.2)] {
            for s in [0.8, 1.3] {
                cases.push((p, z, 0i64, s));
            }
        }
    }
    for p in [3u64, 5] {
        for z in [c(1.0, 0.0), c(0.7, 0.2)] {
            let e = 1;
            for s in [0.8, 1.3] {
                cases.push((p, z, e, s));
            }
        }
    }
    let mut worst = (0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for &(p, z, e, s) in &cases {
        let th = [PAdicCharacter::new(p, z, e).unwrap()];
        let s = c(s, 0.0);
        let g = gamma_rho_torus(&rho, &th, s, &n).unwrap();
        let o8 = oscillatory_oracle(&rho, &th, s, 8, 8, Exec::Parallel).unwrap();
        let o6 = oscillatory_oracle(&rho, &th, s, 6, 6, Exec::Parallel).unwrap();
        let (d, inc) = ((g - o8).norm(), (o8 - o6).norm());
        worst = (worst.0.max(d), worst.1.max(inc));
        if d >= 1e-6 || inc >= 1e-8 {
            bad.push(format!("p={p} z={z} e={e} s={s}: diff {d:e} inc {inc:e}"));
        }
    }
    let msg = format!("{} cases, max diff {:e}, max increment {:e}", cases.len(), worst.0, worst.1);
    (bad.is_empty(), if bad.is_empty() { msg } else { format!("{msg}; {}", bad.join("; ")) })
}

fn random_admissible(rng: &mut ChaCha8Rng, rank: usize) -> WeightList {
    loop {
        let len = rng.random_range(1..=5);
        let w: Vec<Vec<i64>> = (0..len).map(|_| (0..rank).map(|_| rng.random_range(-1..3)).collect()).collect();
        if let Ok(l) = WeightList::new(rank, w) {
            if l.is_admissible() && l.grading().is_ok() {
                return l;
            }
        }
    }
}

fn unlabelled(l: &LocalLFactor) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = l.factors.iter().map(|t| (t.value.re.to_bits(), t.value.im.to_bits())).collect();
    v.sort_unstable();
    v
}

fn product_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let norm = Normalization::default();
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..5 {
        let rank = 1 + k % 3;
        let (a, b) = (random_admissible(&mut rng, rank), random_admissible(&mut rng, rank));
        let p = [3u64, 5, 7][k % 3];
        let th: Vec<PAdicCharacter> = (0..rank)
            .map(|_| PAdicCharacter::new(p, c(rng.random_range(0.3..0.9), rng.random_range(-0.2..0.2)), rng.random_range(0..3)).unwrap())
            .collect();
        let sum = a.direct_sum(&b).unwrap();
        let l_sum = l_rho(&sum, &th).unwrap();
        if l_sum != l_rho(&a, &th).unwrap().mul(&l_rho(&b, &th).unwrap()) {
            bad.push(format!("L of {:?} + {:?}", a.weights(), b.weights()));
        }
        let mut single = LocalLFactor::one();
        for lam in sum.weights() {
            single = single.mul(&tate_l(&PAdicCharacter::compose(&th, lam).unwrap()));
        }
        if unlabelled(&l_sum) != unlabelled(&single) {
            bad.push(format!("L vs Tate product for {:?}", sum.weights()));
        }
        let s = c(1.7, 0.3);
        let g = gamma_rho_torus(&sum, &th, s, &norm).unwrap();
        let h = gamma_rho_torus(&a, &th, s, &norm).unwrap() * gamma_rho_torus(&b, &th, s, &norm).unwrap();
        let rel = (g - h).norm() / g.norm().max(1.0);
        worst = worst.max(rel);
        if rel > 1e-12 {
            bad.push(format!("gamma of {:?}: {rel:e}", sum.weights()));
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("5 pairs; L exact; gamma max relative error {worst:e}") } else { bad.join("; ") })
}

fn torus_main() -> Outcome {
    let mut bad = Vec::new();
    let families = ["1", "1;1", "1,0;0,1", "1,0;0,1;2,-1", "1,0;0,1;2,-1;0,1", "1,0,0;0,1,0;0,0,1;1,1,-1"];
    let q = 3;
    let norm = Normalization::default();
    for f in families {
        let rho = WeightList::parse(f).unwrap();
        let crho = LatticeFunction::c_rho(&rho);
        let m = mellin(&crho);
        if !schwartz_membership(&m, &rho) {
            bad.push(format!("{f}: C_rho not in the Schwartz space"));
        }
        let lam = rho.weights()[0].clone();
        let mut double = MellinImage::laurent(Laurent::one(rho.rank()));
        double.push_factor(int(1), lam.clone(), 2);
        let supplied = rho.weights().iter().filter(|l| **l == lam).count();
        if supplied < 2 && schwartz_membership(&double, &rho) {
            bad.push(format!("{f}: 1/(1-z^{lam:?})^2 accepted"));
        }
        match fourier_rho(&crho, &rho, q, &norm) {
            Ok(fc) if same_lattice_function(&fc, &crho) => {}
            _ => bad.push(format!("{f}: F(C_rho) != C_rho")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let k = rng.random_range(0..=50);
        let pts: Vec<(Vec<i64>, Rational)> =
            (0..k).map(|_| (vec![rng.random_range(-6..7), rng.random_range(-6..7)], int(rng.random_range(-5..6)))).collect();
        let f = LatticeFunction::plain(2, pts).unwrap();
        if inverse_mellin_plain(&mellin(&f)).ok().as_ref() != Some(&f) {
            bad.push("Mellin round trip".into());
        }
    }
    let rho = WeightList::parse("1,0;0,1;2,-1").unwrap();
    let crho = LatticeFunction::c_rho(&rho);
    let mut worst = 0.0f64;
    let mus: [[i64; 2]; 10] = [[0, 0], [1, 0], [0, 1], [1, 1], [2, 0], [2, 1], [3, -1], [1, 2], [4, -1], [2, 2]];
    for mu in mus {
        let exact = gammafactor::algebra::rational::to_f64(&crho.value_at(&mu).unwrap());
        let num = fourier_rho_numeric(&crho, &rho, q, &mu, 16).unwrap();
        worst = worst.max((exact - num).abs());
    }
    if worst >= 1e-6 {
        bad.push(format!("numeric convolution off by {worst:e}"));
    }
    let msg = format!("{} weight lists; 20 round trips; numeric max error {worst:e}", families.len());
    (bad.is_empty(), if bad.is_empty() { msg } else { format!("{msg}; {}", bad.join("; ")) })
}

fn basic_function() -> Outcome {
    let mut bad = Vec::new();
    for w in ["1", "1;1", "2", "1;1;1"] {
        let rho = WeightList::parse(w).unwrap();
        let b = basic_function_satake(&rho, 3, 12).unwrap();
        let d = rho.weights()[0][0];
        for m in 0..=12 * d {
            if b.coefficient(&[m]) != int(partition_c_rho(&rho, &[m]).unwrap() as i64) {
                bad.push(format!("rank 1 {w} at {m}"));
            }
        }
    }
    let std2 = WeightList::standard(2);
    for q in [3, 5] {
        if basic_function_satake(&std2, q, 4).unwrap().coefficients != basic_function_oracle(&std2, q, 4).unwrap() {
            bad.push(format!("rank 2 std at q={q}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "rank 1 to degree 12; rank 2 std to degree 4 at q in {3,5}".into() } else { bad.join("; ") })
}

fn fiber_volumes() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let fibrations: [(&[u32], &[u32]); 4] = [(&[2], &[]), (&[1, 1], &[0]), (&[2, 3], &[0]), (&[2, 3], &[1])];
    for p in [3u64, 5] {
        for (n, m) in fibrations {
            for v in 1..=8 {
                for t in (1..p * p).filter(|t| t % p != 0) {
                    let base = monomial_fiber_volume(n, m, p, v, t, 4).unwrap();
                    if monomial_fiber_volume(n, m, p, v, t, 6).unwrap() != base {
                        bad.push(format!("level p={p} n={n:?} v={v} t={t}"));
                    }
                    for u in (2..p + 2).filter(|u| u % p != 0) {
                        let tu = (t * u.pow(n[0])) % p.pow(6);
                        count += 1;
                        if monomial_fiber_volume(n, m, p, v, tu, 4).unwrap() != base {
                            bad.push(format!("invariance p={p} n={n:?} v={v} t={t} u={u}"));
                        }
                    }
                }
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{count} invariance checks, levels 4 and 6 agree") } else { bad.join("; ") })
}

fn determinism() -> Outcome {
    let cmds: [&[&str]; 8] = [
        &["finite", "--q", "3", "--mode", "verify"],
        &["finite", "--q", "5", "--mode", "gamma"],
        &["--format", "tsv", "finite", "--q", "3", "--mode", "table"],
        &["padic", "gamma", "--weights", "1,0;0,1;1,1", "--theta-unram", "0.7+0.2i,1", "--theta-exp", "0,1", "--s", "1.5"],
        &["padic", "mellin", "--weights", "1,0;0,1;2,-1"],
        &["padic", "basic", "--rank", "2", "--degree", "4", "--oracle"],
        &["padic", "volume", "--exponents", "2,3", "--form", "1", "--v", "7"],
        &["crystal", "--m", "3", "--n", "2", "--trials", "10", "--seed", "5"],
    ];
    let run = |a: &[&str]| Command::new(env!("CARGO_BIN_EXE_gammafactor")).args(a).output().unwrap().stdout;
    let differ: Vec<String> = cmds.iter().filter(|a| run(a) != run(a)).map(|a| a.join(" ")).collect();
    (differ.is_empty(), if differ.is_empty() { format!("{} commands byte-identical", cmds.len()) } else { differ.join("; ") })
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("finite-main sweep, GL(2), q in {3,5}", finite_main_literal),
        ("GL(1) gamma values", gl1_gamma),
        ("character-table oracle and orthogonality", character_tables),
        ("crystal Weyl action certification", crystal),
        ("p-adic oracle agreement", padic_oracle),
        ("direct-sum and L product laws", product_laws),
        ("Schwartz membership, Mellin and Fourier", torus_main),
        ("basic function coefficients", basic_function),
        ("fiber volume stabilization", fiber_volumes),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, msg) = f();
        failed += usize::from(!ok);
        println!("{} criterion {}: {name}: {msg}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
