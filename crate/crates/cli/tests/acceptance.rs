//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Run with `--nocapture` to see the report.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use deals_core::{
    binomial, ct_sequence_term, enumerate_deals, enumerate_deals_with_red_denoms,
    enumerate_full_color_deals, franel, histogram, lhs_sum, prop2_count, rhs_sum, stat1_count,
    stat2_count, vandermonde_inner, vandermonde_outer, Count, Deal, DeckSpec, DenomSet,
    IdentityPolys, LaurentPoly, Limits, Prop1Params, Prop2Params, Statistic,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(v: u64) -> Count {
    Count::from(v)
}

fn subsets(n: u32) -> impl Iterator<Item = DenomSet> {
    (0u32..(1 << n)).map(move |mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

fn sequence_reproduction() -> Check {
    let expected = [1u64, 3, 15, 93, 639];
    for (n, &v) in expected.iter().enumerate() {
        let n = n as u64;
        ensure(lhs_sum(n) == c(v), || {
            format!("lhs_sum({n}) = {}", lhs_sum(n))
        })?;
        ensure(rhs_sum(n) == c(v), || {
            format!("rhs_sum({n}) = {}", rhs_sum(n))
        })?;
        let ct = ct_sequence_term(n).map_err(|e| e.to_string())?;
        ensure(ct == c(v), || format!("ct_sequence_term({n}) = {ct}"))?;
    }
    Ok(())
}

fn identity_at_scale() -> Check {
    for n in 0..=60 {
        let (l, r) = (lhs_sum(n), rhs_sum(n));
        ensure(l == r, || format!("n={n}: lhs={l} rhs={r}"))?;
    }
    for n in 0..=25 {
        let ct = ct_sequence_term(n).map_err(|e| e.to_string())?;
        ensure(ct == lhs_sum(n), || format!("n={n}: ct={ct}"))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let totals = [1usize, 3, 15, 93, 639];
    for n in 0..=4u32 {
        let spec = DeckSpec::new(n);
        let count = enumerate_deals(spec, Limits::default())
            .map_err(|e| e.to_string())?
            .count();
        ensure(count == totals[n as usize], || {
            format!("n={n}: {count} deals")
        })?;
        let by_s =
            histogram(spec, Statistic::SSize, Limits::default()).map_err(|e| e.to_string())?;
        let by_red = histogram(spec, Statistic::RedDistinct, Limits::default())
            .map_err(|e| e.to_string())?;
        for k in 0..=n as i64 {
            let n64 = u64::from(n);
            let want_s = binomial(n64, k) * franel(k as u64);
            let want_red = binomial(n64, k) * binomial(n64, k) * binomial(2 * k as u64, k);
            ensure(by_s.get(k as usize) == Some(&want_s), || {
                format!(
                    "n={n} k={k}: |S| bucket {:?} != {want_s}",
                    by_s.get(k as usize)
                )
            })?;
            ensure(by_red.get(k as usize) == Some(&want_red), || {
                format!(
                    "n={n} k={k}: red bucket {:?} != {want_red}",
                    by_red.get(k as usize)
                )
            })?;
            ensure(
                stat1_count(n64, k).ok() == Some(want_s.clone())
                    && stat2_count(n64, k).ok() == Some(want_red.clone()),
                || format!("n={n} k={k}: closed-form bucket helpers disagree"),
            )?;
        }
    }
    Ok(())
}

fn prop1_audit() -> Check {
    // Pinned after the enumeration oracle produced them.
    let franel_values = [1u64, 2, 10, 56, 346];
    for n in 0..=4u32 {
        let spec = DeckSpec::new(n);
        let params: Vec<Prop1Params> = Prop1Params::all(spec).collect();
        let want = franel_values[n as usize];
        ensure(
            params.len() as u64 == want && franel(n.into()) == c(want),
            || {
                format!(
                    "n={n}: {} params, franel {}",
                    params.len(),
                    franel(n.into())
                )
            },
        )?;
        let mut image = BTreeSet::new();
        for p in &params {
            let deal = p.encode().map_err(|e| format!("{p}: {e}"))?;
            ensure(Prop1Params::decode(&deal).as_ref() == Ok(p), || {
                format!("round trip failed at {p}")
            })?;
            image.insert(deal);
        }
        let full: BTreeSet<Deal> = enumerate_full_color_deals(spec, Limits::default())
            .map_err(|e| e.to_string())?
            .collect();
        ensure(image.len() == params.len(), || {
            format!("n={n}: encode not injective")
        })?;
        ensure(image == full, || {
            format!("n={n}: image differs from full-deck deals")
        })?;
        for deal in &full {
            let back = Prop1Params::decode(deal).and_then(|p| p.encode());
            ensure(back.as_ref() == Ok(deal), || {
                format!("round trip failed at {deal}")
            })?;
        }
    }
    Ok(())
}

fn prop2_audit() -> Check {
    for n in 0..=4u32 {
        let spec = DeckSpec::new(n);
        for d in subsets(n) {
            let params: Vec<Prop2Params> = Prop2Params::all(spec, &d)
                .map_err(|e| e.to_string())?
                .collect();
            let k = d.len() as u64;
            let want = binomial(n.into(), k as i64) * binomial(2 * k, k as i64);
            ensure(c(params.len() as u64) == want, || {
                format!("n={n} D={d:?}: {} params, want {want}", params.len())
            })?;
            ensure(prop2_count(n.into(), k as i64).ok() == Some(want), || {
                "prop2_count disagrees".to_string()
            })?;
            let mut image = BTreeSet::new();
            for p in &params {
                let deal = p.encode().map_err(|e| format!("{p}: {e}"))?;
                ensure(Prop2Params::decode(&deal).as_ref() == Ok(p), || {
                    format!("round trip failed at {p}")
                })?;
                image.insert(deal);
            }
            let target: BTreeSet<Deal> =
                enumerate_deals_with_red_denoms(spec, &d, Limits::default())
                    .map_err(|e| e.to_string())?
                    .collect();
            ensure(image.len() == params.len() && image == target, || {
                format!("n={n} D={d:?}: encode is not a bijection onto the red-set deals")
            })?;
        }
    }
    let spot = Prop2Params::all(DeckSpec::new(2), &DenomSet::from([1]))
        .map_err(|e| e.to_string())?
        .count();
    ensure(spot == 4, || format!("n=2 D={{1}}: {spot} params"))
}

fn vandermonde_properties() -> Check {
    for k in 0..=12u64 {
        for a in 0..=k as i64 {
            let v = vandermonde_inner(k, a).map_err(|e| e.to_string())?;
            ensure(v == binomial(2 * k, k as i64), || {
                format!("inner k={k} a={a}: {v}")
            })?;
        }
    }
    for n in 0..=12u64 {
        for k in 0..=n as i64 {
            let direct: Count = (0..=k)
                .map(|a| binomial(k as u64, a) * binomial(n - k as u64, n as i64 - k - a))
                .sum();
            ensure(direct == binomial(n, k), || {
                format!("outer n={n} k={k}: {direct}")
            })?;
            ensure(vandermonde_outer(n, k).ok() == Some(direct), || {
                format!("vandermonde_outer({n},{k}) disagrees")
            })?;
        }
    }
    Ok(())
}

fn polynomial_factorization() -> Check {
    let polys = IdentityPolys::new();
    let product = &polys.factor1 * &polys.factor2;
    ensure(product == polys.base, || {
        format!("{product} != {}", polys.base)
    })?;
    ensure(product.num_terms() == 7, || {
        format!("{} terms", product.num_terms())
    })?;
    ensure(product.constant_term() == 3.into(), || {
        format!("constant term {}", product.constant_term())
    })?;
    let hand_expansion = LaurentPoly::from_terms([
        (3, 0, 0),
        (1, 1, 0),
        (1, -1, 0),
        (1, 0, 1),
        (1, 0, -1),
        (1, -1, 1),
        (1, 1, -1),
    ]);
    ensure(product == hand_expansion, || {
        "hand expansion differs".to_string()
    })
}

fn deals_binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_deals"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {}", out.status)
    })?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    for args in [
        &["enumerate", "--n", "3"][..],
        &["verify", "--max-n", "20"][..],
    ] {
        let first = deals_binary(args)?;
        let second = deals_binary(args)?;
        ensure(!first.is_empty() && first == second, || {
            format!("{args:?} output differs between runs")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            "1 sequence reproduction",
            sequence_reproduction,
            Duration::from_secs(1),
        ),
        (
            "2 identity at scale",
            identity_at_scale,
            Duration::from_secs(30),
        ),
        (
            "3 oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(10),
        ),
        (
            "4 first parameterization audit",
            prop1_audit,
            Duration::from_secs(60),
        ),
        (
            "5 red-set parameterization audit",
            prop2_audit,
            Duration::from_secs(60),
        ),
        (
            "6 vandermonde properties",
            vandermonde_properties,
            Duration::from_secs(60),
        ),
        (
            "7 polynomial factorization",
            polynomial_factorization,
            Duration::from_secs(60),
        ),
        ("8 determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failures = Vec::new();
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed < budget, || {
                format!("took {elapsed:?}, budget {budget:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
