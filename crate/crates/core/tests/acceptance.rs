//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use ucdtqw::circuit::{circuit_to_unitary, synthesize_complement_circuit, SQRT_H, SQRT_H_DAGGER, Gate};
use ucdtqw::cli;
use ucdtqw::complement::{build_complement_operator, cross_validate};
use ucdtqw::graphs::{assemble_shift, complete_adjacency, decompose, verify_kraus, ShiftModel};
use ucdtqw::linalg::is_unitary;
use ucdtqw::probability::{l1_distance, ProbabilityMatrix, ProbabilityVector};
use ucdtqw::sampling::{empirical, sample};
use ucdtqw::walk::hadamard_coin;

type Check = Result<String, String>;

fn cli_stdout(args: &[&str]) -> Result<(String, Duration), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let start = Instant::now();
    let code = cli::run(std::iter::once("ucdtqw").chain(args.iter().copied()), &mut out, &mut err);
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    Ok((String::from_utf8(out).map_err(|e| e.to_string())?, elapsed))
}

fn distribution(args: &[&str]) -> Result<(Vec<f64>, Duration), String> {
    let (out, elapsed) = cli_stdout(args)?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let d = serde_json::from_value(v["distribution"].clone()).map_err(|e| e.to_string())?;
    Ok((d, elapsed))
}

fn check_complement(n: usize, target: usize) -> Check {
    let nodes = 1usize << n;
    let low = 1.0 / (nodes * nodes) as f64;
    let high = low + 1.0 / nodes as f64;
    let (d, elapsed) = distribution(&["simulate", "--n", &n.to_string(), "--target", &target.to_string()])?;
    if d.len() != nodes {
        return Err(format!("{} entries", d.len()));
    }
    for (k, p) in d.iter().enumerate() {
        let want = if k == target { low } else { high };
        if (p - want).abs() >= 1e-12 {
            return Err(format!("p({k}) = {p}, expected {want}"));
        }
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "p(target) = {:.4}%, p(other) = {:.4}% in {elapsed:?}",
        100.0 * d[target],
        100.0 * d[(target + 1) % nodes]
    ))
}

fn criterion_1() -> Check {
    check_complement(2, 1)
}

fn criterion_2() -> Check {
    check_complement(3, 1)
}

fn criterion_3() -> Check {
    check_complement(6, 1)
}

fn criterion_4() -> Check {
    let (a, b) = (5.0 / 16.0, 1.0 / 16.0);
    for t in 0..4usize {
        let (csv, _) = cli_stdout(&["probmatrix", "--n", "2", "--target", &t.to_string()])?;
        let mp = ProbabilityMatrix::from_csv(&csv).map_err(|e| e.to_string())?;
        for row in 0..4 {
            for col in 0..16 {
                // coin block c suppresses node t ^ c
                let want = if row == t ^ (col / 4) { b } else { a };
                if (mp.get(row, col) - want).abs() >= 1e-12 {
                    return Err(format!("target {t}: entry ({row},{col}) = {}", mp.get(row, col)));
                }
            }
        }
    }
    Ok("entrywise match for targets 0..4".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let report = cross_validate(4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected_cases: usize = (1..=4).map(|n| 1usize << (3 * n)).sum();
    if report.cases != expected_cases {
        return Err(format!("{} cases, expected {expected_cases}", report.cases));
    }
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} cases, max deviation {:e}, {elapsed:?}",
        report.cases, report.max_deviation
    ))
}

fn criterion_6() -> Check {
    let mut worst = 0.0f64;
    for t in 0..4 {
        let c = synthesize_complement_circuit(2, t, true).map_err(|e| e.to_string())?;
        let verbatim = c.gates().iter().all(|g| match g {
            Gate::ControlledU { theta, phi, lambda, .. } => {
                [*theta, *phi, *lambda] == [SQRT_H.theta, SQRT_H.phi, SQRT_H.lambda]
                    || [*theta, *phi, *lambda] == [SQRT_H_DAGGER.theta, SQRT_H_DAGGER.phi, SQRT_H_DAGGER.lambda]
            }
            _ => true,
        });
        if !verbatim || SQRT_H.theta != 1.0471975511965976 || SQRT_H.phi != -0.9553166181245089
            || SQRT_H.lambda != 2.186276035465284
        {
            return Err("Euler angles differ from the published values".into());
        }
        let u = circuit_to_unitary(&c).map_err(|e| e.to_string())?;
        let direct = build_complement_operator(2, t).map_err(|e| e.to_string())?;
        let d = u.max_abs_diff_up_to_phase(direct.matrix()).map_err(|e| e.to_string())?;
        worst = worst.max(d);
        if d >= 1e-8 {
            return Err(format!("target {t}: deviation {d:e}"));
        }
    }
    Ok(format!("max deviation up to phase {worst:e}"))
}

fn criterion_7() -> Check {
    for n in 1..=5 {
        let adj = complete_adjacency(n).map_err(|e| e.to_string())?;
        for model in [ShiftModel::Swap, ShiftModel::Cnot] {
            let dec = decompose(&adj, model).map_err(|e| e.to_string())?;
            if dec.block_sum() != adj {
                return Err(format!("{model} n={n}: block sum differs from the adjacency"));
            }
            let s = assemble_shift(&dec).map_err(|e| e.to_string())?;
            if !verify_kraus(&s, 1e-10) || !is_unitary(s.matrix(), 1e-10).map_err(|e| e.to_string())? {
                return Err(format!("{model} n={n}: not a valid shift"));
            }
        }
    }
    Ok("swap and cnot valid for n = 1..=5".into())
}

fn criterion_8() -> Check {
    let p = ProbabilityVector::new(vec![5. / 16., 1. / 16., 5. / 16., 5. / 16.]).map_err(|e| e.to_string())?;
    let fixture = l1_distance(&ProbabilityVector::uniform(4), &p).map_err(|e| e.to_string())?;
    if (fixture - 3.0 / 16.0).abs() > 1e-15 {
        return Err(format!("l1 fixture gave {fixture}"));
    }
    let mut l1: Vec<f64> = (0..20u64)
        .map(|seed| {
            let c = sample(&p, 8192, seed).expect("positive shots");
            l1_distance(&empirical(&c), &p).expect("same length")
        })
        .collect();
    l1.sort_by(f64::total_cmp);
    let median = (l1[9] + l1[10]) / 2.0;
    if median >= 0.02 {
        return Err(format!("median l1 {median}"));
    }
    Ok(format!("median l1 over 20 seeds = {median:.5}"))
}

fn criterion_9() -> Check {
    for m in 1..=6 {
        let h = hadamard_coin(m).map_err(|e| e.to_string())?;
        let mag = 1.0 / ((1usize << m) as f64).sqrt();
        for a in 0..1usize << m {
            for b in 0..1usize << m {
                let z = h[(a, b)];
                let sign = if (a & b).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                if z.re.signum() != sign || z.im != 0.0 || (z.re.abs() - mag).abs() >= 1e-12 {
                    return Err(format!("m={m}: entry ({a},{b}) = {z}"));
                }
            }
        }
    }
    Ok("all entries for m = 1..=6".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("K4 exact distribution", criterion_1),
        ("K8 distribution", criterion_2),
        ("K64 distribution", criterion_3),
        ("probability matrix", criterion_4),
        ("oracle equivalence", criterion_5),
        ("circuit round-trip", criterion_6),
        ("shift-operator validity", criterion_7),
        ("sampling concentration", criterion_8),
        ("Hadamard entry signs", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
