//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs under `cargo test` as its own target.

use std::process::{Command, ExitCode};
use std::time::Instant;

use gridwalk::constructor::{construct_between, construct_from, serpentine, ConstructionRequest};
use gridwalk::enumerator::{EnumerationQuery, Enumerator, Execution, NeighborOrder, SearchConfig};
use gridwalk::existence::{audit, claimed_yes_pairs, corollary_pair_count, Agreement};
use gridwalk::grid::{validate_walk, Cell, Direction, GridSpec, MoveSet};
use gridwalk::ledger::{pair_agreement, LEDGER};
use gridwalk::rectifiable::{path_length, polyline_of_walk, total_variation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_gridwalk"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

fn cli_json(args: &[&str]) -> Result<(i32, Value, String), String> {
    let (code, out, err) = cli(args);
    let v = serde_json::from_str(&out).map_err(|e| format!("{args:?}: {e}; stderr: {err}"))?;
    Ok((code, v, err))
}

fn serpentine_example() -> Outcome {
    let (code, v, err) = cli_json(&["construct", "--n", "5", "--start", "1,1", "--dir", "E"])?;
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let w = gridwalk::grid::Walk::from_json_str(&v.to_string()).map_err(|e| e.to_string())?;
    ensure(w.steps() == 24, || format!("{} steps", w.steps()))?;
    ensure(w.last() == Cell::new(5, 5), || {
        format!("ends at {}", w.last())
    })?;
    ensure(
        Direction::between(w.cells()[0], w.cells()[1]) == Some(Direction::E),
        || "first step not E".into(),
    )?;
    Ok("24 steps, (1,1) -> (5,5)".into())
}

fn adjacent_pairs_on_four() -> Outcome {
    let g = GridSpec::rook(4).unwrap();
    let oracle = Enumerator::new(SearchConfig::fast());
    let pairs = claimed_yes_pairs(&g);
    ensure(pairs.len() == 24, || format!("{} pairs", pairs.len()))?;
    for pc in &pairs {
        let w = construct_between(&ConstructionRequest::between(g, pc.a, pc.b))
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}-{}: no walk", pc.a, pc.b))?;
        ensure(w.steps() == 15, || {
            format!("{}-{}: {} steps", pc.a, pc.b, w.steps())
        })?;
        let v = audit(pc, &oracle).map_err(|e| e.to_string())?;
        ensure(v.agreement == Agreement::Agree, || {
            format!("{}-{}: {:?}", pc.a, pc.b, v.agreement)
        })?;
    }
    Ok("24 pairs, 15 steps each, all Agree".into())
}

fn fourteen_step_pair() -> Outcome {
    let (code, v, err) = cli_json(&["check", "--n", "4", "--a", "2,2", "--b", "2,4"])?;
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    ensure(v["oracle_max"] == 14, || {
        format!("oracle_max {}", v["oracle_max"])
    })?;
    ensure(v["claim"] == "ClaimedNo(Thm2-)", || {
        format!("claim {}", v["claim"])
    })?;
    ensure(v["agreement"] == "Agree", || {
        format!("agreement {}", v["agreement"])
    })?;
    Ok("max 14, ClaimedNo, Agree".into())
}

fn pair_count_formula() -> Outcome {
    let mut seen = Vec::new();
    for (n, expected) in [(4usize, 24u64), (6, 60), (8, 112)] {
        let formula = corollary_pair_count(n as u64 / 2);
        let direct = claimed_yes_pairs(&GridSpec::rook(n).unwrap()).len() as u64;
        ensure(formula == expected && direct == expected, || {
            format!("n={n}: formula {formula}, direct {direct}")
        })?;
        seen.push(direct.to_string());
    }
    Ok(seen.join("/"))
}

fn king_three_counts() -> Outcome {
    let start = Instant::now();
    let (code, v, err) = cli_json(&["enumerate", "--n", "3", "--moves", "king"])?;
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let counts: Vec<u64> = v["classes"]
        .as_array()
        .ok_or("no classes")?
        .iter()
        .map(|c| c["count_each"].as_u64().unwrap_or(0))
        .collect();
    ensure(counts == [138, 50, 32], || format!("per-class {counts:?}"))?;
    ensure(v["total"] == 784, || format!("total {}", v["total"]))?;
    let records = v["discrepancies"].as_array().map_or(0, Vec::len);
    ensure(
        records == 4 && err.contains("reference discrepancy"),
        || "discrepancies not reported".into(),
    )?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 5.0, || format!("{elapsed:.2}s"))?;
    Ok(format!("corner 138, edge 50, centre 32, total 784 (published 6/10/16/80; {records} discrepancy records)"))
}

fn parity_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fast = Enumerator::new(SearchConfig::fast());
    let mut paths = 0;
    for i in 0..200 {
        let n = 2 + i % 4;
        let g = GridSpec::rook(n).unwrap();
        let a = Cell::new(rng.gen_range(1..=n), rng.gen_range(1..=n));
        let b = loop {
            let b = Cell::new(rng.gen_range(1..=n), rng.gen_range(1..=n));
            if b != a {
                break b;
            }
        };
        let r = fast
            .run(&EnumerationQuery::between(g, a, b).collecting(Some(50)))
            .map_err(|e| e.to_string())?;
        let steps = r
            .max_steps
            .ok_or_else(|| format!("n={n} {a}-{b}: no walk"))?;
        let bound = g.parity_step_bound(a, Some(b));
        ensure(steps <= bound, || {
            format!("n={n} {a}-{b}: {steps} > {bound}")
        })?;
        for w in r.paths.unwrap_or_default() {
            paths += 1;
            let alternates = w.cells().windows(2).all(|p| p[0].parity() != p[1].parity());
            ensure(alternates, || format!("n={n} {a}-{b}: colours repeat"))?;
        }
    }
    Ok(format!("200 pairs, {paths} paths, no violations"))
}

fn determinism() -> Outcome {
    let configs = [
        SearchConfig::oracle(),
        SearchConfig {
            order: NeighborOrder::Shuffled(42),
            ..SearchConfig::oracle()
        },
        SearchConfig {
            order: NeighborOrder::Reversed,
            ..SearchConfig::oracle()
        },
        SearchConfig {
            execution: Execution::PrefixParallel { depth: 3 },
            ..SearchConfig::oracle()
        },
        SearchConfig::fast(),
    ];
    for g in [GridSpec::king(3).unwrap(), GridSpec::rook(4).unwrap()] {
        let reference = Enumerator::new(configs[0])
            .total_max_walk_count(g)
            .map_err(|e| e.to_string())?;
        for cfg in &configs[1..] {
            let t = Enumerator::new(*cfg)
                .total_max_walk_count(g)
                .map_err(|e| e.to_string())?;
            ensure(t.per_start == reference.per_start, || {
                format!("{} n={}: {cfg:?} differs", g.moves(), g.n())
            })?;
        }
    }
    Ok("king 3x3 and rook 4x4 identical under 5 configurations".into())
}

fn odd_grid_claims_on_five() -> Outcome {
    let g = GridSpec::rook(5).unwrap();
    let pairs = claimed_yes_pairs(&g);
    for pc in &pairs {
        let w = construct_between(&ConstructionRequest::between(g, pc.a, pc.b))
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{}-{} ({}): no walk", pc.a, pc.b, pc.claim))?;
        ensure(
            w.steps() == 24 && validate_walk(&g, w.cells()).is_ok(),
            || format!("{}-{}", pc.a, pc.b),
        )?;
    }
    Ok(format!("{} pairs, 24 steps each", pairs.len()))
}

fn rectifiable_suite() -> Outcome {
    for n in 2..=8 {
        let w = serpentine(&GridSpec::rook(n).unwrap()).map_err(|e| e.to_string())?;
        let len = path_length(&polyline_of_walk(&w));
        ensure(len == (n * n - 1) as f64, || {
            format!("serpentine n={n}: {len}")
        })?;
    }
    let mut walks = 0;
    for side in [2, 4, 6, 8] {
        let g = GridSpec::rook(side).unwrap();
        for start in g.cells() {
            for dir in Direction::ORTHOGONAL
                .into_iter()
                .filter(|&d| g.step(start, d).is_some())
            {
                let w = construct_from(&ConstructionRequest::from_start(g, start, Some(dir)))
                    .map_err(|e| e.to_string())?;
                let v = total_variation(&polyline_of_walk(&w), side);
                ensure(v.within_bound, || {
                    format!("side {side} {start} {dir}: {} >= {}", v.variation, v.bound)
                })?;
                walks += 1;
            }
        }
    }
    let king = GridSpec::king(3).unwrap();
    let oracle = Enumerator::new(SearchConfig::fast());
    let mut king_paths = 0;
    for start in king.cells() {
        let r = oracle
            .run(&EnumerationQuery::from_start(king, start).collecting(None))
            .map_err(|e| e.to_string())?;
        for w in r.paths.unwrap_or_default() {
            let d = w.diagonal_steps();
            let expected = (w.steps() - d) as f64 + d as f64 * std::f64::consts::SQRT_2;
            let got = path_length(&polyline_of_walk(&w));
            ensure((got - expected).abs() < 1e-12, || {
                format!("king path length {got} vs {expected}")
            })?;
            king_paths += 1;
        }
    }
    Ok(format!(
        "serpentines exact, {walks} maximum walks under bound, {king_paths} king paths exact"
    ))
}

fn ledger_is_pinned() -> Outcome {
    let (code, v, err) = cli_json(&["check", "--n", "4", "--a", "1,1", "--b", "3,4"])?;
    ensure(code == 1, || format!("check exit {code}: {err}"))?;
    ensure(
        v["agreement"] == "PaperUnderclaims" && v["oracle_max"] == 15,
        || format!("check record {v}"),
    )?;
    let (code, v, err) = cli_json(&["enumerate", "--n", "3", "--moves", "rook", "--start", "1,2"])?;
    ensure(code == 0, || format!("enumerate exit {code}: {err}"))?;
    ensure(v["max_steps"] == 7, || {
        format!("minority start max {}", v["max_steps"])
    })?;
    let ids: Vec<&str> = v["discrepancies"]
        .as_array()
        .ok_or("no discrepancy record")?
        .iter()
        .filter_map(|d| d["id"].as_str())
        .collect();
    ensure(ids == ["odd-grid-minority-start"], || {
        format!("records {ids:?}")
    })?;

    let oracle = Enumerator::oracle();
    for e in LEDGER {
        let r = e.recheck(&oracle).map_err(|err| err.to_string())?;
        ensure(r.stable, || {
            format!("{}: recorded {}, now {}", e.id, e.recorded, r.observed)
        })?;
        ensure(!r.matches_claim, || {
            format!("{}: now matches the published {}", e.id, e.claimed)
        })?;
    }
    let pair = pair_agreement(&LEDGER[0], &oracle)
        .ok_or("first entry is not a pair")?
        .map_err(|e| e.to_string())?;
    ensure(pair == Agreement::PaperUnderclaims, || {
        format!("pair entry {pair:?}")
    })?;
    ensure(
        LEDGER[1].moves == MoveSet::Rook && LEDGER[1].recorded == 7,
        || "minority entry changed".into(),
    )?;
    Ok(format!("{} entries stable", LEDGER.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("serpentine from (1,1) heading east", serpentine_example),
        ("adjacent non-corner pairs on 4x4", adjacent_pairs_on_four),
        ("(2,2)-(2,4) on 4x4 tops out at 14", fourteen_step_pair),
        ("adjacent-pair count formula", pair_count_formula),
        ("king 3x3 maximum-walk counts", king_three_counts),
        ("colour-alternation bound", parity_property),
        ("deterministic merge across search orders", determinism),
        ("odd-grid positive claims on 5x5", odd_grid_claims_on_five),
        ("polyline length and variation", rectifiable_suite),
        ("discrepancy ledger pinned", ledger_is_pinned),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
