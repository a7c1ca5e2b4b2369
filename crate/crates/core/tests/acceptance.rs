//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hecke_core::basicsets::{
    basic_set_catalog, beta_factorization, canonical_basic_set, g2_decomposition_table, verify_conjecture_shape,
    verify_unitriangular, CatalogEntry,
};
use hecke_core::charshur::{a_invariant, builtin_g2_reps, pairing_sum, verify_trace_identity};
use hecke_core::combinat::{
    a_invariant_unitary, dominates, embed_bipartition, extract_bipartition, is_e_regular, list_bipartitions,
    list_partitions, n_invariant, two_core, Bipartition, Partition,
};
use hecke_core::coxeter::{build_datum, unitary_weights, CoxeterType};
use hecke_core::exactalg::LaurentPoly;
use hecke_core::genericity::sweep;
use hecke_core::hecke::{tau_bilinear, HeckeElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn g2_a_invariants() -> Outcome {
    let reps = builtin_g2_reps();
    let mut got = Vec::new();
    for name in ["ind", "eps1", "rho+", "rho-", "eps2", "eps"] {
        let rep = reps.iter().find(|r| r.name() == name).ok_or(format!("missing {name}"))?;
        let c = rep.schur_element().map_err(|e| e.to_string())?;
        got.push(a_invariant(&c).map_err(|e| e.to_string())?.a);
    }
    ensure!(got == [0, 1, 3, 3, 7, 12], "a-values {got:?}");
    Ok(format!("a = {got:?}"))
}

fn g2_basic_sets() -> Outcome {
    let printed: [(u32, &[&str]); 4] = [
        (2, &["ind", "rho+", "rho-"]),
        (3, &["ind", "eps1", "rho+", "rho-"]),
        (6, &["ind", "eps1", "rho+"]),
        (12, &["ind", "eps1", "rho+", "rho-", "eps2"]),
    ];
    let all: &[&str] = &["ind", "eps1", "rho+", "rho-", "eps2", "eps"];
    let cases = printed.into_iter().chain([5, 7, 13].map(|e| (e, all)));
    for (e, expected) in cases {
        let set = canonical_basic_set(&g2_decomposition_table(e)).map_err(|err| format!("e={e}: {err}"))?;
        let got: BTreeSet<&str> = set.label_set();
        let want: BTreeSet<&str> = expected.iter().copied().collect();
        ensure!(got == want && set.iota.len() == want.len(), "e={e}: got {got:?}");
    }
    Ok("e = 2, 3, 6, 12, 5, 7, 13".into())
}

fn tau_identity() -> Outcome {
    let reps = builtin_g2_reps();
    if let Some(w) = verify_trace_identity(&reps).map_err(|e| e.to_string())? {
        return Err(format!("trace identity fails at element {}", w.index()));
    }
    let mut pairs = 0;
    for r1 in &reps {
        for r2 in &reps {
            let s = pairing_sum(r1, r2).map_err(|e| e.to_string())?;
            let expected = if r1.name() == r2.name() {
                r1.schur_element()
                    .map_err(|e| e.to_string())?
                    .scale(&BigRational::from_integer(BigInt::from(r1.dim())))
            } else {
                LaurentPoly::zero()
            };
            ensure!(s == expected, "pairing of {} and {}", r1.name(), r2.name());
            pairs += 1;
        }
    }
    Ok(format!("12 elements, {pairs} pairs"))
}

fn hecke_axioms() -> Outcome {
    let data = [
        Arc::new(build_datum(CoxeterType::G2, 2, &[3, 1]).unwrap()),
        Arc::new(build_datum(CoxeterType::B, 2, &[1, 1]).unwrap()),
    ];
    let mut rng = StdRng::seed_from_u64(2024);
    let mut triples = 0;
    for d in &data {
        let t: Vec<HeckeElement> = (0..d.rank()).map(|s| HeckeElement::basis(d, d.generator(s))).collect();
        for s in 0..d.rank() {
            let q = LaurentPoly::u_pow(d.weights()[s] as i64);
            let rhs = &HeckeElement::monomial(d, d.identity(), q.clone()) + &t[s].scale(&(&q - &LaurentPoly::one()));
            ensure!(t[s].multiply(&t[s]).unwrap() == rhs, "quadratic relation for s{}", s + 1);
            for r in s + 1..d.rank() {
                let m = d.coxeter_matrix()[s][r];
                let alt = |a: usize, b: usize| {
                    (0..m).fold(HeckeElement::one(d), |acc, i| acc.multiply(&t[if i % 2 == 0 { a } else { b }]).unwrap())
                };
                ensure!(alt(s, r) == alt(r, s), "braid relation s{} s{}", s + 1, r + 1);
            }
        }
        for _ in 0..250 {
            let x = common::random_hecke(&mut rng, d);
            let y = common::random_hecke(&mut rng, d);
            let z = common::random_hecke(&mut rng, d);
            let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
            let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
            ensure!(left == right, "associativity fails for {x}, {y}, {z}");
            triples += 1;
        }
        for w in d.elements() {
            for v in d.elements() {
                let expected = if v == d.inverse(w) {
                    LaurentPoly::u_pow(d.weight(w) as i64)
                } else {
                    LaurentPoly::zero()
                };
                ensure!(tau_bilinear(d, w, v) == expected, "bilinear form at ({}, {})", d.render(w), d.render(v));
            }
        }
    }
    Ok(format!("{triples} triples, G2 and B2 exhaustive"))
}

fn dominance_monotonicity() -> Outcome {
    let mut pairs = 0;
    for n in 0..=10 {
        let parts = list_partitions(n).map_err(|e| e.to_string())?;
        for a in &parts {
            for b in &parts {
                if dominates(a, b).unwrap() {
                    pairs += 1;
                    ensure!(n_invariant(b) <= n_invariant(a), "n({b}) > n({a})");
                    ensure!((n_invariant(a) == n_invariant(b)) == (a == b), "equality at {a}, {b}");
                }
            }
        }
    }
    Ok(format!("{pairs} comparable pairs"))
}

fn embedding() -> Outcome {
    for m in 0..=5u32 {
        for s in 0..2u32 {
            let n = 2 * m + s;
            let mut image = BTreeSet::new();
            let bips = list_bipartitions(m).unwrap();
            for b in &bips {
                let l = embed_bipartition(b, s).map_err(|e| e.to_string())?;
                ensure!(l.size() == n && two_core(&l).size() == s, "bad image {l} of {b}");
                ensure!(extract_bipartition(&l, s).as_ref() == Ok(b), "round trip of {b}");
                image.insert(l);
            }
            let target: BTreeSet<Partition> = list_partitions(n)
                .unwrap()
                .into_iter()
                .filter(|l| two_core(l).size() == s)
                .collect();
            ensure!(image.len() == bips.len() && image == target, "not a bijection for m={m} s={s}");

            ensure!(embed_bipartition(&Bipartition::index_label(m), s).unwrap() == Partition::row(n), "index anchor m={m} s={s}");
            ensure!(a_invariant_unitary(&Bipartition::index_label(m), s).unwrap() == 0, "index a m={m} s={s}");
            ensure!(embed_bipartition(&Bipartition::sign_label(m), s).unwrap() == Partition::column(n), "sign anchor m={m} s={s}");
            let a = a_invariant_unitary(&Bipartition::sign_label(m), s).unwrap();
            ensure!(a == u64::from(n * n.saturating_sub(1) / 2), "sign a m={m} s={s}");
            if m >= 2 {
                let d = build_datum(CoxeterType::B, m as usize, &unitary_weights(m as usize, s)).unwrap();
                ensure!(a == d.weight(d.longest_element()), "sign a versus longest weight m={m} s={s}");
            }
        }
    }
    Ok("m <= 5, s = 0, 1".into())
}

fn genericity() -> Outcome {
    let r = sweep(50, 50, &[1, 2], 3);
    ensure!(r.failures.is_empty(), "{} failures, first {:?}", r.failures.len(), r.failures[0]);
    Ok(format!("{} cases, {} outside hypotheses", r.cases, r.skipped))
}

fn lemma_factorization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(32);
    for k in 0..200 {
        let inst = common::factor_instance(&mut rng);
        let r = beta_factorization(&inst.full, &inst.root, &inst.dprime).map_err(|e| format!("instance {k}: {e}"))?;
        ensure!(r.sets_equal, "instance {k}: sets differ");
        for (mu, (_, root_col)) in r.beta.iter().enumerate() {
            ensure!(*root_col == format!("e{}", inst.shuffle[mu]), "instance {k}: beta at column {mu}");
        }
    }
    Ok("200 instances".into())
}

fn catalog_counts() -> Outcome {
    let labels = |c: CatalogEntry| match c {
        CatalogEntry::Catalogued { labels, .. } => Ok(labels),
        other => Err(format!("unexpected {other:?}")),
    };
    let regular = |n: u32, e: u32| list_partitions(n).unwrap().iter().filter(|l| is_e_regular(l, e)).count();
    for n in 1..=12u32 {
        for e in 2..=5 {
            let got = labels(basic_set_catalog(CoxeterType::A, n as usize - 1, &vec![1; n as usize - 1], e).unwrap())?;
            ensure!(got.len() == regular(n, e), "A: n={n} e={e}");
        }
    }
    for m in 1..=6u32 {
        for s in 0..2 {
            for e in [3, 4, 5, 7, 8] {
                let got = labels(basic_set_catalog(CoxeterType::B, m as usize, &unitary_weights(m as usize, s), e).unwrap())?;
                let brute: usize = (0..=m).map(|k| regular(k, e) * regular(m - k, e)).sum();
                ensure!(got.len() == brute, "B: m={m} s={s} e={e}");
            }
        }
    }
    Ok("A n <= 12, B m <= 6".into())
}

fn triangularity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for k in 0..100 {
        let n = 3 + (k % 5) as u32;
        let d = common::unitriangular_instance(&mut rng, n);
        let r = verify_unitriangular(&d).map_err(|e| e.to_string())?;
        ensure!(r.pass && r.consistent, "instance {k} rejected");
        let (bad, i, j) = common::seed_violation(&mut rng, &d);
        let r = verify_unitriangular(&bad).map_err(|e| e.to_string())?;
        ensure!(
            !r.pass && r.dominance_violations.len() == 1 && (r.dominance_violations[0].row, r.dominance_violations[0].col) == (i, j),
            "instance {k}: seeded violation at ({i}, {j}) not reported"
        );

        let shape = verify_conjecture_shape(&d).map_err(|e| e.to_string())?;
        ensure!(shape.pass, "instance {k}: block shape rejected");
        ensure!(shape.blocks.windows(2).all(|w| w[0].d < w[1].d), "instance {k}: blocks out of order");
        let bad_shape = verify_conjecture_shape(&bad).map_err(|e| e.to_string())?;
        let hit = bad_shape
            .diagonal_violations
            .iter()
            .chain(&bad_shape.off_diagonal_violations)
            .any(|v| (v.row, v.col) == (i, j));
        // an entry at a non-dominated pair is only a shape violation when n
        // does not drop from row to column
        let expected = n_invariant(&d.cols()[j].parse().unwrap()) >= n_invariant(&d.cols()[i].parse().unwrap());
        ensure!(hit == expected && bad_shape.pass == !expected, "instance {k}: shape verdict at ({i}, {j})");
    }
    Ok("100 instances".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "G2 a-invariants", limit: secs(5), run: g2_a_invariants },
        Criterion { id: 2, name: "G2 canonical basic sets", limit: secs(1), run: g2_basic_sets },
        Criterion { id: 3, name: "trace identity and orthogonality", limit: secs(10), run: tau_identity },
        Criterion { id: 4, name: "Hecke algebra axioms", limit: secs(30), run: hecke_axioms },
        Criterion { id: 5, name: "dominance monotonicity", limit: secs(10), run: dominance_monotonicity },
        Criterion { id: 6, name: "embedding bijectivity and anchors", limit: secs(10), run: embedding },
        Criterion { id: 7, name: "genericity sweep", limit: secs(30), run: genericity },
        Criterion { id: 8, name: "factorization property suite", limit: secs(30), run: lemma_factorization },
        Criterion { id: 9, name: "catalog counts", limit: secs(10), run: catalog_counts },
        Criterion { id: 10, name: "triangularity checkers", limit: secs(10), run: triangularity },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > c.limit => ("FAIL", format!("over time limit {:?}", c.limit)),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{:>2}] {:<36} {:>9.3}s  {detail}", c.id, c.name, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
