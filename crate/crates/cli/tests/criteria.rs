//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the test log.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use alcove_core::cohomology::{
    audit_box, conjugate, fast_class, h1_class, h1_group, solve_localized,
    trivial_over, type_d_conjunctive_same_class, Section,
};
use alcove_core::linalg::determinant;
use alcove_core::orientation::{
    classify_ball, same_orientation_from_vectors, same_orientation_modular,
    same_orientation_theorem, BallReport,
};
use alcove_core::render::{alcove_vertices, render, Coloring, RenderSpec};
use alcove_core::shi::{carry_positions, is_alcove, lambda_of, parse_pyramid, shi_vector, type_a_index};
use alcove_core::weyl::{enumerate_ball, evaluate_word, generators};
use alcove_core::{AffineElement, CartanType, GeneratorWord, RootSystem, ShiVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LEFT_PYRAMID: &str = "11|4 9|0 2 11|0 -2 4 11|1 -2 0 3 7";
const RIGHT_PYRAMID: &str = "4|7 3|2 6 4|0 1 7 2|0 -1 2 4 -3";
/// Red cells of the figure, as `(i, j)` for `e_i - e_j`.
const RED: [(usize, usize); 7] = [(1, 3), (3, 5), (4, 6), (1, 4), (2, 5), (1, 5), (1, 6)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rs(kind: CartanType, rank: usize) -> RootSystem {
    RootSystem::new(kind, rank).expect("valid root system")
}

fn criterion_1() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_alcove-shi");
    let start = Instant::now();
    let text = Command::new(bin)
        .args(["shi", "--type", "B", "--rank", "2", "--word", "1"])
        .output()
        .expect("run binary");
    let elapsed = start.elapsed();
    let json = Command::new(bin)
        .args(["shi", "--type", "B", "--rank", "2", "--word", "1", "--json"])
        .output()
        .expect("run binary");
    let first = String::from_utf8_lossy(&text.stdout).lines().next().unwrap_or("").to_string();
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap_or_default();
    let k = doc["k"].clone();
    let pass = text.status.success()
        && first == "(-1, 0, 0, 0)"
        && k == serde_json::json!([-1, 0, 0, 0])
        && elapsed < Duration::from_secs(1);
    outcome(pass, format!("stdout {first:?}, json k {k}, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let a5 = rs(CartanType::A, 5);
    let left = parse_pyramid(&a5, LEFT_PYRAMID).unwrap();
    let right = parse_pyramid(&a5, RIGHT_PYRAMID).unwrap();
    let alcoves = is_alcove(&a5, &left).unwrap() && is_alcove(&a5, &right).unwrap();
    let (v1, v2) = (ShiVector::new(&a5, left).unwrap(), ShiVector::new(&a5, right).unwrap());
    let (l1, l2) = (lambda_of(&a5, &v1), lambda_of(&a5, &v2));
    let lambda_equal = l1 == l2;

    let red: BTreeSet<usize> = RED.iter().map(|&(i, j)| type_a_index(&a5, i, j).unwrap()).collect();
    let ones: BTreeSet<usize> = (0..l1.entries().len()).filter(|&r| l1.entries()[r] == 1).collect();
    let lambda_one_at_red = ones == red;
    let carries: BTreeSet<usize> = carry_positions(&a5, &v1)
        .into_iter()
        .enumerate()
        .filter_map(|(r, c)| c.then_some(r))
        .collect();
    let carries_at_red = carries == red;

    let sum = |v: &ShiVector| -> i64 {
        v.simple_part(5).iter().enumerate().map(|(j, k)| (j as i64 + 1) * k).sum::<i64>().rem_euclid(6)
    };
    let sums = (sum(&v1), sum(&v2));
    let theorem = same_orientation_theorem(&a5, &v1, &v2);
    let modular = same_orientation_modular(&a5, &v1, &v2).unwrap();
    let oracle = same_orientation_from_vectors(&a5, &v1, &v2);
    let verdicts_different = !theorem && !modular && !oracle;
    let elapsed = start.elapsed();

    let name = |set: &BTreeSet<usize>| -> String {
        let mut cells = Vec::new();
        for i in 1..=6 {
            for j in i + 1..=6 {
                if set.contains(&type_a_index(&a5, i, j).unwrap()) {
                    cells.push(format!("v{i}{j}"));
                }
            }
        }
        cells.join(",")
    };
    let pass = alcoves
        && lambda_equal
        && lambda_one_at_red
        && sums == (2, 5)
        && verdicts_different
        && elapsed < Duration::from_secs(1);
    let mut detail = format!(
        "alcoves {alcoves}, lambda equal {lambda_equal}, sums ({}, {}) mod 6, all verdicts different {verdicts_different}, {elapsed:?}; \
         lambda=1 at {{{}}} vs red {{{}}}; lambda=2 at {{{}}}; +1 carries at red {carries_at_red}",
        sums.0,
        sums.1,
        name(&ones),
        name(&red),
        name(&(0..15).filter(|&r| l1.entries()[r] == 2).collect()),
    );
    if !lambda_one_at_red {
        detail.push_str(
            "; the red cells mark where some v_ik + v_kj needs +1, which is not the set lambda = 1",
        );
    }
    outcome(pass, detail)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let b2 = rs(CartanType::B, 2);
    let (a, b) = (Section { coeffs: vec![1, 3] }, Section { coeffs: vec![1, 2] });
    let over_z = conjugate(&b2, &a, &b).is_none();
    let trivial = trivial_over(&b2, &[2]);
    let local = solve_localized(&b2, &a.difference(&b), &[2]);
    let power_of_two = |s: String| s.parse::<u128>().map(|d| d.is_power_of_two()).unwrap_or(false);
    let local_ok = local
        .as_ref()
        .is_some_and(|z| z.iter().all(|q| power_of_two(q.denom().to_string())));
    let elapsed = start.elapsed();
    let pass = over_z && trivial && local_ok && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "not conjugate over Z {over_z}, trivial over Z[1/2] {trivial}, Z[1/2] solution {:?}, {elapsed:?}",
            local.map(|z| z.iter().map(|q| q.to_string()).collect::<Vec<_>>())
        ),
    )
}

fn criterion_4() -> Outcome {
    let a3 = rs(CartanType::A, 3);
    let (s, t) = (Section { coeffs: vec![3, 4, 5] }, Section { coeffs: vec![6, 7, 8] });
    let counter = conjugate(&a3, &s, &t).is_none()
        && h1_class(&a3, &s) != h1_class(&a3, &t)
        && !fast_class(&a3, &s.difference(&t)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    let mut parts = Vec::new();
    let mut all_same = true;
    for p in [2usize, 3, 5, 7] {
        let n = p - 1;
        let a_n = rs(CartanType::A, n);
        let mut same = 0;
        for _ in 0..200 {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
            let c = rng.gen_range(-1000..=1000);
            let b: Vec<i64> = a.iter().map(|x| x + c).collect();
            let (sa, sb) = (Section { coeffs: a }, Section { coeffs: b });
            let exact = conjugate(&a_n, &sa, &sb).is_some();
            assert_eq!(exact, fast_class(&a_n, &sa.difference(&sb)).unwrap());
            assert_eq!(exact, h1_class(&a_n, &sa) == h1_class(&a_n, &sb));
            same += usize::from(exact);
        }
        all_same &= same == 200;
        parts.push(format!("n+1={p}: {same}/200 same"));
    }
    let mut detail = format!("A3 (3,4,5) vs (6,7,8) different {counter}; {}", parts.join(", "));
    if !all_same {
        detail.push_str(
            "; for n+1=2 the sum d_1 reduces to the constant itself, so odd shifts give distinct classes",
        );
    }
    outcome(counter && all_same, detail)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(CartanType, usize, i64)> = Vec::new();
    for n in 1..=8 {
        cases.push((CartanType::A, n, n as i64 + 1));
    }
    for n in 2..=8 {
        cases.push((CartanType::B, n, 2));
        cases.push((CartanType::C, n, 2));
    }
    for n in 4..=8 {
        cases.push((CartanType::D, n, 4));
    }
    cases.extend([
        (CartanType::E, 6, 3),
        (CartanType::E, 7, 2),
        (CartanType::E, 8, 1),
        (CartanType::F, 4, 1),
        (CartanType::G, 2, 1),
    ]);
    let mut bad = Vec::new();
    for &(kind, n, want) in &cases {
        let r = rs(kind, n);
        let g = h1_group(&r);
        let product: i64 = g.invariant_factors.iter().product();
        let det = determinant(r.cartan()).magnitude().to_string();
        if g.order() != want || product.to_string() != det {
            bad.push(format!("{}: factors {:?} det {det}", r.label(), g.invariant_factors));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(1),
        format!("{} systems, mismatches {bad:?}, {elapsed:?}", cases.len()),
    )
}

const BALLS: [(CartanType, usize, usize); 7] = [
    (CartanType::A, 2, 10),
    (CartanType::A, 3, 8),
    (CartanType::B, 2, 12),
    (CartanType::B, 3, 7),
    (CartanType::C, 3, 7),
    (CartanType::D, 4, 6),
    (CartanType::G, 2, 12),
];

fn criterion_6(reports: &[BallReport], elapsed: Duration) -> Outcome {
    let mut pass = elapsed < Duration::from_secs(300);
    let mut parts = Vec::new();
    for r in reports {
        pass &= r.discrepancies.is_empty();
        parts.push(format!(
            "{}~ L{}: {} elts, {} pairs, {} same-component, {} discrepancies",
            r.root_system,
            r.radius,
            r.elements,
            r.pairs_checked,
            r.same_component_pairs,
            r.discrepancies.len()
        ));
        for d in r.discrepancies.iter().take(3) {
            parts.push(format!("  {}", serde_json::to_string(d).unwrap()));
        }
    }
    outcome(pass, format!("{:?} total; {}", elapsed, parts.join("; ")))
}

fn criterion_7(reports: &[BallReport]) -> Outcome {
    let mut notes = Vec::new();
    let injective = reports.iter().all(|r| r.injective);
    notes.push(format!("injective on all balls {injective}"));

    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut covariant = true;
    for &(kind, n, _) in &BALLS {
        let r = rs(kind, n);
        for _ in 0..500 {
            let len = rng.gen_range(0..=16);
            let w = evaluate_word(&r, &GeneratorWord((0..len).map(|_| rng.gen_range(0..=n)).collect())).unwrap();
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let tw = AffineElement::translation_by(x.clone()).multiply(&w).unwrap();
            let (v, tv) = (shi_vector(&r, &w), shi_vector(&r, &tw));
            covariant &= (0..r.num_positive_roots())
                .all(|i| tv.entries()[i] == v.entries()[i] + r.pairing_int(&x, i));
        }
    }
    notes.push(format!("translation covariance (500 per type) {covariant}"));

    let mut records = Vec::new();
    let mut conjunctive = 0;
    for kind in [CartanType::A, CartanType::B, CartanType::C, CartanType::D] {
        for n in 1..=4 {
            let Ok(r) = RootSystem::new(kind, n) else { continue };
            records.extend(audit_box(&r, 3, "fast_class", |d| fast_class(&r, d).unwrap()));
            if kind == CartanType::D && n >= 4 {
                conjunctive += audit_box(&r, 3, "type_d_conjunctive", type_d_conjunctive_same_class).len();
            }
        }
    }
    for rec in &records {
        println!("  discrepancy {}", serde_json::to_string(rec).unwrap());
    }
    notes.push(format!(
        "fast_class vs conjugate on [-3,3]^n, n<=4, types A-D: {} discrepancy records; conjunctive type-D reading disagrees on {conjunctive} vectors",
        records.len()
    ));

    let mut identity = true;
    let mut systems = 0;
    for kind in [
        CartanType::A,
        CartanType::B,
        CartanType::C,
        CartanType::D,
        CartanType::E,
        CartanType::F,
        CartanType::G,
    ] {
        for n in 1..=8 {
            let Ok(r) = RootSystem::new(kind, n) else { continue };
            systems += 1;
            for t in r.triples() {
                let (a, b, s) = (r.root(t.alpha), r.root(t.beta), r.root(t.sum));
                identity &= (0..n).all(|j| {
                    s.sq_norm * s.coroot_coords[j]
                        == a.sq_norm * a.coroot_coords[j] + b.sq_norm * b.coroot_coords[j]
                });
            }
        }
    }
    notes.push(format!("cancellation identity on {systems} systems {identity}"));
    outcome(injective && covariant && records.is_empty() && identity, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let fills = |svg: &str| -> BTreeSet<String> {
        svg.split("fill=\"")
            .skip(1)
            .filter_map(|s| s.split('"').next())
            .filter(|c| c.starts_with('#'))
            .map(String::from)
            .collect()
    };
    let b2 = rs(CartanType::B, 2);
    let spec = RenderSpec { radius: 8, coloring: Coloring::Orientation, ..RenderSpec::default() };
    let first = render(&b2, &spec).unwrap();
    let second = render(&b2, &spec).unwrap();
    let b2_colors = fills(&first).len();
    let identical = first == second;
    let a2 = rs(CartanType::A, 2);
    let a2_colors: Vec<usize> = [2, 5, 8]
        .iter()
        .map(|&radius| {
            let spec = RenderSpec { radius, coloring: Coloring::Component, ..RenderSpec::default() };
            fills(&render(&a2, &spec).unwrap()).len()
        })
        .collect();
    // neighbours w and w s share exactly the vertices of a wall
    let gens = generators(&b2);
    let shared = enumerate_ball(&b2, 5).iter().all(|b| {
        let mine: BTreeSet<_> = alcove_vertices(&b2, &b.element).into_iter().collect();
        gens.iter().all(|s| {
            let theirs: BTreeSet<_> = alcove_vertices(&b2, &b.element.multiply(s).unwrap()).into_iter().collect();
            mine.intersection(&theirs).count() == 2
        })
    });
    outcome(
        b2_colors == 8 && a2_colors.iter().all(|&c| c == 2) && identical && shared,
        format!(
            "B2 L8 orientation colors {b2_colors}, A2 component colors at L2/L5/L8 {a2_colors:?}, byte-identical {identical}, shared walls exact {shared}"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let reports: Vec<BallReport> = BALLS.iter().map(|&(k, n, l)| classify_ball(&rs(k, n), l)).collect();
    let ball_time = start.elapsed();

    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(&reports, ball_time),
        criterion_7(&reports),
        criterion_8(),
    ];
    let mut failed = Vec::new();
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {} | {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        if !r.pass {
            failed.push(i + 1);
        }
    }
    println!(
        "acceptance: {}/{} passed in {:?}",
        results.len() - failed.len(),
        results.len(),
        start.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

