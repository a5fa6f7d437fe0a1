use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use involution_paths::bijection::{from_grand, to_grand};
use involution_paths::oracle::{
    brute_force_members, brute_force_oracle, signed_polynomial, slice_polynomial, OracleTable,
};
use involution_paths::path::grand_paths;
use involution_paths::perm::{enumerate, Constraint};
use involution_paths::qalg::{binomial, e_spec, q_binomial, q_binomial_at_minus_one, q_binomial_pascal};
use involution_paths::rsk::transpose_involution;
use involution_paths::sign::{sweep_contracts, Involution, InvolutionCase};
use involution_paths::verify::{check, genfun, CheckOptions, GenFunSpec, IdentityId, VerificationReport};
use involution_paths::{Exec, Family, LatticePath, LaurentPoly, Pattern, Stat};
use num_bigint::BigInt;
use serde_json::Value;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn opts() -> CheckOptions {
    CheckOptions {
        exec: Exec::Parallel,
        override_bounds: false,
    }
}

fn run_check(id: IdentityId, n: usize, param: Option<i64>) -> Result<VerificationReport, String> {
    let r = check(id, n, param, opts()).map_err(|e| e.to_string())?;
    ensure!(r.equal, "{id} n={n} {param:?}: lhs {} != rhs {}", r.lhs, r.rhs);
    Ok(r)
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ipaths"))
        .args(["--format", "json"])
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "ipaths {args:?} exited with {}", out.status);
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn worked_example() -> Outcome {
    let d = cli_json(&["map", "delta", "--perm", "2 1 3 6 7 4 5 8 10 9 11"])?;
    ensure!(d["output"] == "NENNNEENNEN", "delta gave {}", d["output"]);
    ensure!(d["sump"] == 15, "delta sump {}", d["sump"]);

    let x = cli_json(&["map", "xi", "--path", "NENNNEENNEN"])?;
    ensure!(x["output"]["path"] == "NEENNEEENEN", "xi gave {}", x["output"]["path"]);
    ensure!(
        x["unmatched_north"] == serde_json::json!([3, 8, 11]),
        "unmatched {}",
        x["unmatched_north"]
    );
    ensure!(
        x["input"]["sump"] == 15 && x["output"]["sump"] == 15,
        "sump not 15 on both paths"
    );
    let before = x["input"]["peaks"].as_array().ok_or("peaks missing")?;
    let after = x["output"]["peaks"].as_array().ok_or("peaks missing")?;
    let moved: Vec<(Value, Value)> = before
        .iter()
        .cloned()
        .zip(after.iter().cloned())
        .filter(|(a, b)| a != b)
        .collect();
    let expected = vec![
        (serde_json::json!([1, 4]), serde_json::json!([2, 3])),
        (serde_json::json!([3, 6]), serde_json::json!([5, 4])),
    ];
    ensure!(moved == expected, "peak motion {moved:?}");

    let inv = cli_json(&["map", "delta-inv", "--path", "NENNNEENNEN"])?;
    ensure!(
        inv["cycles"] == "(1 2)(3)(4 6)(5 7)(8)(9 10)(11)",
        "cycles {}",
        inv["cycles"]
    );
    Ok(())
}

fn bijection_suite() -> Outcome {
    for n in 0..=14 {
        let mut image = BTreeSet::new();
        for sigma in enumerate(Family::I321, n) {
            let pi = to_grand(&sigma).map_err(|e| e.to_string())?;
            ensure!(
                from_grand(&pi, n).map_err(|e| e.to_string())? == sigma,
                "roundtrip fails at {sigma}"
            );
            ensure!(
                pi.sump() as i64 == sigma.stat(Stat::Maj),
                "maj not carried to sump at {sigma}"
            );
            ensure!(
                pi.peaks().len() as i64 == sigma.stat(Stat::Des),
                "des not carried to peaks at {sigma}"
            );
            if n > 0 {
                let j = pi.b_subset_index().map_err(|e| e.to_string())?;
                ensure!(
                    j as i64 + 1 == sigma.stat(Stat::Lead),
                    "lead not carried to subset at {sigma}"
                );
            }
            image.insert(pi);
        }
        ensure!(
            BigInt::from(image.len()) == binomial(n as i64, n as i64 / 2),
            "image size at n={n}"
        );
        let target: BTreeSet<LatticePath> = grand_paths(n / 2, n.div_ceil(2)).into_iter().collect();
        ensure!(image == target, "image is not B at n={n}");
    }
    Ok(())
}

fn counting_laws() -> Outcome {
    for n in 1..=16i64 {
        for l in 1..=n {
            let c = Constraint::new(Stat::Lead, l).map_err(|e| e.to_string())?;
            let got = involution_paths::perm::enumerate_filtered(Family::I321, n as usize, c).len();
            let want = binomial(n - l, (n + 1) / 2 - 1);
            ensure!(BigInt::from(got) == want, "lead={l} n={n}: {got} vs {want}");
        }
    }
    Ok(())
}

fn joint_distribution() -> Outcome {
    for n in 0..=16usize {
        for k in 0..=(n / 2) as i64 {
            run_check(IdentityId::JdDes, n, Some(k))?;
        }
        if n >= 1 {
            for ell in 1..=(n / 2 + 1) as i64 {
                run_check(IdentityId::JdLead, n, Some(ell))?;
            }
        }
    }
    Ok(())
}

fn lead_identities() -> Outcome {
    for id in [
        IdentityId::LeadI,
        IdentityId::LeadII,
        IdentityId::LeadIII,
        IdentityId::LeadIV,
    ] {
        for n in 1..=4 {
            run_check(id, n, None)?;
        }
    }
    Ok(())
}

fn contract_suite() -> Outcome {
    for which in Involution::ALL {
        for n in 0..=4 {
            let sweep = sweep_contracts(InvolutionCase::new(which, n), Exec::Parallel);
            ensure!(sweep.all_hold(), "{} n={n}: {sweep:?}", which.name());
            if n >= 1 {
                let failures = sweep
                    .cardinality_failures
                    .clone()
                    .unwrap_or_else(|| vec!["not checked".into()]);
                ensure!(failures.is_empty(), "{} n={n}: {failures:?}", which.name());
            }
        }
    }
    Ok(())
}

fn side_123() -> Outcome {
    for n in 0..=12 {
        for sigma in enumerate(Family::I321, n) {
            let t = transpose_involution(&sigma).map_err(|e| e.to_string())?;
            ensure!(
                t.is_involution() && !t.contains_pattern(Pattern::P123),
                "{sigma}^T not in I(123)"
            );
            ensure!(
                transpose_involution(&t).map_err(|e| e.to_string())? == sigma,
                "transpose not involutive at {sigma}"
            );
            let des = sigma.stats().des_set;
            let complement: Vec<usize> = (1..n).filter(|i| !des.contains(i)).collect();
            ensure!(t.stats().des_set == complement, "descent complement fails at {sigma}");
        }
    }
    for id in [IdentityId::Des123I, IdentityId::Des123II, IdentityId::Des123III] {
        for n in 1..=18 {
            if id.perm_length(n) <= 18 {
                run_check(id, n, None)?;
            }
        }
    }
    for n in 1..=18 {
        for k in 0..=(n / 2) as i64 {
            run_check(IdentityId::Cor123, n, Some(k))?;
        }
    }
    Ok(())
}

fn q_algebra() -> Outcome {
    for n in 0..=12i64 {
        for k in 0..=n {
            let lhs = e_spec(k, 0, n - 1);
            ensure!(
                lhs == q_binomial(n, k).shift(k * (k - 1) / 2),
                "specialization e_{k}, n={n}"
            );
            ensure!(e_spec(k, 3, n + 2) == lhs.shift(3 * k), "shift law e_{k}, n={n}");
        }
    }
    for n in 0..=30i64 {
        for k in 0..=n {
            let sub = q_binomial(n, k).evaluate(-1).map_err(|e| e.to_string())?;
            ensure!(q_binomial_at_minus_one(n, k) == sub, "[{n},{k}] at q=-1");
        }
    }
    for n in 0..=16i64 {
        for k in 0..=n {
            ensure!(q_binomial(n, k) == q_binomial(n, n - k), "symmetry [{n},{k}]");
            ensure!(q_binomial(n, k) == q_binomial_pascal(n, k), "recurrence [{n},{k}]");
        }
    }
    Ok(())
}

fn bonus_identities() -> Outcome {
    let survivors = brute_force_members(Family::S321, 9).map_err(|e| e.to_string())?;
    ensure!(survivors.len() == 4862, "{} survivors of S_9", survivors.len());
    for n in 1..=9 {
        let r = run_check(IdentityId::Ss, n, None)?;
        let table = brute_force_oracle(Family::S321, n, (Stat::Inv, Stat::Ldes)).map_err(|e| e.to_string())?;
        ensure!(
            r.lhs == signed_polynomial(&table, 0),
            "SS n={n} disagrees with filtering"
        );
    }
    for id in [IdentityId::ArOdd, IdentityId::ArEven] {
        for n in 1..=4 {
            let length = id.perm_length(n);
            if length > 9 {
                continue;
            }
            let r = run_check(id, n, None)?;
            let table = brute_force_oracle(Family::S321, length, (Stat::Inv, Stat::Ldes)).map_err(|e| e.to_string())?;
            ensure!(
                r.lhs == signed_polynomial(&table, 1),
                "{id} n={n} disagrees with filtering"
            );
        }
    }
    Ok(())
}

fn marginal(table: &OracleTable, scale: i64) -> LaurentPoly {
    LaurentPoly::from_terms(table.iter().map(|(&(_, b), &c)| (scale * b, c)))
}

fn compare(label: &str, n: usize, ours: LaurentPoly, oracle: LaurentPoly) -> Outcome {
    ensure!(ours == oracle, "{label} n={n}: genfun {ours} vs oracle {oracle}");
    Ok(())
}

fn oracle_independence() -> Outcome {
    let ex = Exec::Parallel;
    let oracle = |family, n, pair| brute_force_oracle(family, n, pair).map_err(|e| e.to_string());
    for n in 0..=12usize {
        for family in [Family::I321, Family::I123] {
            let t = oracle(family, n, (Stat::Des, Stat::Maj))?;
            for k in 0..=n as i64 {
                let spec = GenFunSpec::weighted(family, n, Stat::Maj).filtered(Constraint {
                    stat: Stat::Des,
                    value: k,
                });
                compare(
                    &format!("{family} maj | des={k}"),
                    n,
                    genfun(&spec, ex),
                    slice_polynomial(&t, k, 1),
                )?;
            }
            let t = oracle(family, n, (Stat::Maj, Stat::Des))?;
            let spec = GenFunSpec::weighted(family, n, Stat::Des).signed(Stat::Maj);
            compare(
                &format!("{family} (-1)^maj q^des"),
                n,
                genfun(&spec, ex),
                signed_polynomial(&t, 1),
            )?;
            let spec = GenFunSpec::weighted(family, n, Stat::Des).scaled(2);
            compare(&format!("{family} q^2des"), n, genfun(&spec, ex), marginal(&t, 2))?;
        }
        let t = oracle(Family::I321, n, (Stat::Lead, Stat::Maj))?;
        for l in 1..=n as i64 {
            let spec = GenFunSpec::weighted(Family::I321, n, Stat::Maj).filtered(Constraint {
                stat: Stat::Lead,
                value: l,
            });
            compare(
                &format!("I321 maj | lead={l}"),
                n,
                genfun(&spec, ex),
                slice_polynomial(&t, l, 1),
            )?;
        }
        let t = oracle(Family::I321, n, (Stat::Maj, Stat::Lead))?;
        let spec = GenFunSpec::weighted(Family::I321, n, Stat::Lead).signed(Stat::Maj);
        compare("I321 (-1)^maj q^lead", n, genfun(&spec, ex), signed_polynomial(&t, 1))?;
        let spec = GenFunSpec::weighted(Family::I321, n, Stat::Lead).scaled(2);
        compare("I321 q^2lead", n, genfun(&spec, ex), marginal(&t, 2))?;

        let t = oracle(Family::S321, n, (Stat::Inv, Stat::Ldes))?;
        let spec = GenFunSpec::weighted(Family::S321, n, Stat::Ldes).signed(Stat::Inv);
        compare("S321 (-1)^inv q^ldes", n, genfun(&spec, ex), signed_polynomial(&t, 1))?;
        let spec = GenFunSpec::weighted(Family::S321, n, Stat::Ldes).scaled(2);
        compare("S321 q^2ldes", n, genfun(&spec, ex), marginal(&t, 2))?;
        let spec = GenFunSpec::new(Family::S321, n).signed(Stat::Inv);
        compare("S321 (-1)^inv", n, genfun(&spec, ex), signed_polynomial(&t, 0))?;
    }
    Ok(())
}

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            number: 1,
            title: "worked example through the CLI",
            limit: secs(1),
            run: worked_example,
        },
        Criterion {
            number: 2,
            title: "bijection and statistic transport, n <= 14",
            limit: secs(30),
            run: bijection_suite,
        },
        Criterion {
            number: 3,
            title: "lead counting law, n <= 16",
            limit: None,
            run: counting_laws,
        },
        Criterion {
            number: 4,
            title: "joint distribution of (des, maj) and (lead, maj), n <= 16",
            limit: secs(60),
            run: joint_distribution,
        },
        Criterion {
            number: 5,
            title: "lead identities I-IV, lengths <= 19",
            limit: secs(60),
            run: lead_identities,
        },
        Criterion {
            number: 6,
            title: "sign-reversing involution contracts, n <= 4",
            limit: secs(120),
            run: contract_suite,
        },
        Criterion {
            number: 7,
            title: "transpose law n <= 12, 123-side identities to length 18",
            limit: secs(60),
            run: side_123,
        },
        Criterion {
            number: 8,
            title: "q-algebra laws",
            limit: secs(10),
            run: q_algebra,
        },
        Criterion {
            number: 9,
            title: "sign-balance identities over S_n(321), lengths <= 9",
            limit: secs(30),
            run: bonus_identities,
        },
        Criterion {
            number: 10,
            title: "generating functions agree with brute-force oracle, n <= 12",
            limit: None,
            run: oracle_independence,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = started.elapsed();
        let result = match (result, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!("took longer than {} s", limit.as_secs())),
            (r, _) => r,
        };
        let limit = c.limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        match result {
            Ok(()) => println!(
                "PASS criterion {:>2}: {} ({:.2} s{limit})",
                c.number,
                c.title,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2}: {} ({:.2} s{limit}): {why}",
                    c.number,
                    c.title,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
