//! Exit criteria. Each criterion runs sequentially under its own time limit
//! and prints one PASS/FAIL line to stderr.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use morse_core::derived::{
    method_a_prefix, run_length_profile, theta_prefix, v_prefix, vartheta_prefix, w_prefix, DigitTriple, TernarySource,
};
use morse_core::dynamics::{language_disjointness, periodicity_witness, uniform_recurrence_bound};
use morse_core::method_b::{kappa_prefix, MethodBConfig};
use morse_core::repetitions::{
    check_no_overlapping_occurrences, classify_tm_squares, find_square_naive, is_cube_free, is_overlap_free,
    is_square_free, runs, SquareClass,
};
use morse_core::thue_morse::{
    classify_lookalikes, definitions_agree, seeded_flip_prefix, tm_prefix, BlockKind, FlipSeed,
};
use morse_core::words::{right_special_census, subword_complexity};
use morse_core::Word;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// First `(start, period)` with `text[start..start + reach(period)]` of period `period`.
fn brute_repetition(text: &[u8], reach: impl Fn(usize) -> usize) -> Option<(usize, usize)> {
    let n = text.len();
    for start in 0..n {
        for p in 1..=n {
            if start + reach(p) > n {
                break;
            }
            if (start + p..start + reach(p)).all(|i| text[i] == text[i - p]) {
                return Some((start, p));
            }
        }
    }
    None
}

fn c01_generator_fidelity() -> Outcome {
    let cases = [
        ("tm", "16", "0110100110010110"),
        ("theta", "16", "0120102120210120"),
        ("vartheta", "16", "0210120212010210"),
        ("v", "11", "21020121012"),
        ("alpha", "35", "10110111010110101110110111010111011"),
    ];
    for (family, length, expected) in cases {
        let started = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_morse"))
            .args(["generate", family, "--length", length])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure(out.status.success(), format!("generate {family} failed"))?;
        let text = String::from_utf8_lossy(&out.stdout);
        ensure(text.trim_end() == expected, format!("generate {family}: {text:?}"))?;
        ensure(elapsed < Duration::from_secs(1), format!("generate {family} took {elapsed:?}"))?;
    }
    Ok("5 prefixes byte-exact".into())
}

fn c02_definition_equivalence() -> Outcome {
    let a = definitions_agree(1 << 20);
    ensure(a.agree, format!("first mismatch at {:?}", a.first_mismatch))?;
    Ok("4 generators agree on 2^20".into())
}

fn c03_overlap_free() -> Outcome {
    let v = is_overlap_free(&tm_prefix(1 << 20));
    ensure(v.holds, format!("witness {:?}", v.witness))?;
    let small = tm_prefix(1 << 10);
    let fast = is_overlap_free(&small).holds;
    let naive = brute_repetition(small.symbols(), |p| 2 * p + 1).is_none();
    ensure(fast && naive, format!("2^10 cross-check fast={fast} naive={naive}"))?;
    Ok("M[2^20] overlap-free; oracle agrees on 2^10".into())
}

fn c04_v_equals_w() -> Outcome {
    let v = v_prefix(100_000);
    ensure(v == w_prefix(100_000), "v != w")?;
    let sf = is_square_free(&v);
    ensure(sf.holds, format!("square {:?}", sf.witness))?;
    Ok("v = w on 10^5 and square-free".into())
}

fn c05_theta_vartheta_square_free() -> Outcome {
    for (name, word) in [("theta", theta_prefix(1_000_000)), ("vartheta", vartheta_prefix(1_000_000))] {
        let v = is_square_free(&word);
        ensure(v.holds, format!("{name}: square {:?}", v.witness))?;
        let small = word.truncated(1000);
        ensure(
            brute_repetition(small.symbols(), |p| 2 * p).is_none() && is_square_free(&small).holds,
            format!("{name}: oracle disagrees at 10^3"),
        )?;
    }
    Ok("theta, vartheta square-free on 10^6".into())
}

fn census_summary() -> Value {
    let census = classify_tm_squares(1 << 14).expect("census");
    let mut other_roots: BTreeMap<String, usize> = BTreeMap::new();
    for sq in census.squares.iter().filter(|s| s.class == SquareClass::Other) {
        other_roots.entry(sq.root.to_string()).or_insert(sq.start);
    }
    json!({
        "prefix_length": census.prefix_length,
        "squares": census.squares.len(),
        "partition_similar": census.partition_similar,
        "other": census.other,
        "power_of_two_other": census.power_of_two_other,
        "by_root_length": census.by_root_length,
        "first_occurrence_of_other_roots": other_roots,
    })
}

fn c06_square_census() -> Outcome {
    let a = census_summary();
    ensure(a == census_summary(), "census not deterministic")?;
    ensure(a["power_of_two_other"] == 0, "power-of-two root classified OTHER")?;
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/tm_square_census_16384.json");
    let golden: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(a == golden, "census differs from committed golden file")?;
    ensure(a["first_occurrence_of_other_roots"]["010"].is_u64(), "root 010 missing from OTHER")?;
    let census = classify_tm_squares(1 << 14).expect("census");
    ensure(
        census.squares.iter().any(|s| s.start == 63 && s.root.to_string() == "010"),
        "no OTHER square with root 010 at index 63",
    )?;
    Ok(format!("{} squares, {} OTHER, golden match", a["squares"], a["other"]))
}

fn c07_no_overlapping_occurrences() -> Outcome {
    let v = check_no_overlapping_occurrences(&tm_prefix(1 << 16), 64).map_err(|e| e.to_string())?;
    ensure(v.is_empty(), format!("{} overlapping pairs, first {:?}", v.len(), v.first()))?;
    Ok("0 overlapping pairs for lengths <= 64".into())
}

fn c08_lookalikes() -> Outcome {
    let m = tm_prefix(1 << 16);
    let mut total = 0;
    for k in 1..=8 {
        let found = classify_lookalikes(&m, k).map_err(|e| e.to_string())?;
        for kind in [BlockKind::X, BlockKind::Y] {
            ensure(found.iter().any(|o| o.kind == kind), format!("k={k}: no {kind:?} look-alikes"))?;
        }
        let bad: Vec<_> = found.iter().filter(|o| !o.centered).collect();
        ensure(bad.is_empty(), format!("k={k}: {} exceptions, first {:?}", bad.len(), bad.first()))?;
        total += found.len();
    }
    Ok(format!("{total} look-alikes, 0 exceptions"))
}

fn c09_recurrence() -> Outcome {
    let r = uniform_recurrence_bound(&tm_prefix(1 << 16), 12).map_err(|e| e.to_string())?;
    ensure(r.recurrent_in_window(), r.diagnosis.clone())?;
    ensure(r.lengths.iter().all(|l| l.n_bound.is_some()), "missing N_bound")?;
    ensure(r.n_bound(1) == Some(3), format!("N_bound(1) = {:?}", r.n_bound(1)))?;
    Ok(format!("N_bound(1)=3, N_bound(12)={:?}", r.n_bound(12).unwrap()))
}

fn c10_aperiodicity_proxies() -> Outcome {
    let m = tm_prefix(1 << 14);
    let v = is_cube_free(&m);
    ensure(v.holds && v.witness.is_none(), format!("cube {:?}", v.witness))?;
    let rs = right_special_census(&m, 12).map_err(|e| e.to_string())?;
    ensure(rs.len() == 12 && rs.iter().all(|&c| c >= 2), format!("right-special {rs:?}"))?;
    let p = subword_complexity(&m, 3).map_err(|e| e.to_string())?;
    ensure(p == [2, 4, 6], format!("p(1..3) = {p:?}"))?;
    Ok(format!("no cube; right-special {rs:?}"))
}

fn c11_method_a() -> Outcome {
    let alpha = |t: [u8; 3], n| method_a_prefix(DigitTriple::new(t).unwrap(), TernarySource::Theta, n);
    let (a, b) = (alpha([1, 2, 3], 10_000), alpha([4, 5, 6], 10_000));
    let d8 = language_disjointness(&a, &b, 8).map_err(|e| e.to_string())?;
    ensure(d8.is_empty(), format!("{} shared factors at depth 8", d8.len()))?;
    let d3 = language_disjointness(&a, &b, 3).map_err(|e| e.to_string())?;
    ensure(!d3.is_empty(), "nothing shared at depth 3")?;
    for t in [[1, 2, 3], [4, 5, 6]] {
        let r = uniform_recurrence_bound(&alpha(t, 100_000), 12).map_err(|e| e.to_string())?;
        ensure(r.recurrent_in_window(), format!("{t:?}: {}", r.diagnosis))?;
    }
    Ok(format!("disjoint at 8, {} shared at 3, both recurrent", d3.len()))
}

fn c12_method_b() -> Outcome {
    let config = MethodBConfig::default();
    let short = kappa_prefix(&config, 23);
    ensure(short.to_string() == "11001101100101001101001", format!("kappa[23] = {short}"))?;
    let k = kappa_prefix(&config, 100_000);
    let zero_runs: BTreeSet<usize> = run_length_profile(&k).lengths_of(0).collect();
    ensure(zero_runs == BTreeSet::from([1, 2, 3, 4]), format!("0-run lengths {zero_runs:?}"))?;
    if let Some(p) = periodicity_witness(&k, 200, 4).map_err(|e| e.to_string())? {
        let longer = runs(&k).iter().filter(|r| r.period >= 2 && r.period <= 200 && r.exponent() >= 4).count();
        return Err(format!(
            "root^4 found: ({})^{} at {} ({longer} fourth powers with root length 2..=200)",
            p.root, p.exponent, p.start
        ));
    }
    Ok("kappa[23] exact; no root^4; 0-runs {1,2,3,4}".into())
}

fn c13_seeded_flip() -> Outcome {
    let zero = FlipSeed::new(Word::binary(vec![0]).unwrap()).unwrap();
    ensure(seeded_flip_prefix(&zero, 1 << 12) == tm_prefix(1 << 12), "seed 0 differs from M")?;
    let mut seeds = 0;
    for len in 1..=4 {
        for bits in 0u32..(1 << len) {
            let seed: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
            let x = seeded_flip_prefix(&FlipSeed::new(Word::binary(seed.clone()).unwrap()).unwrap(), 1 << 16);
            let r = uniform_recurrence_bound(&x, 8).map_err(|e| e.to_string())?;
            ensure(r.recurrent_in_window(), format!("seed {seed:?}: {}", r.diagnosis))?;
            seeds += 1;
        }
    }
    Ok(format!("{seeds} seeds recurrent"))
}

fn c14_oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0014);
    let mut disagreements = 0;
    let mut with_square = 0;
    for _ in 0..10_000 {
        let k: u8 = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=300);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..k)).collect(), k as u16).unwrap();
        let fast = is_square_free(&w).holds;
        let naive = find_square_naive(&w).is_none();
        if fast != naive {
            disagreements += 1;
        }
        with_square += usize::from(!naive);
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    Ok(format!("0 disagreements over 10^4 words ({with_square} with squares)"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        (1, "generator fidelity", Some(5), c01_generator_fidelity),
        (2, "definition equivalence", Some(5), c02_definition_equivalence),
        (3, "overlap-freeness of M", Some(30), c03_overlap_free),
        (4, "v = w, square-free", Some(30), c04_v_equals_w),
        (5, "theta/vartheta square-free", Some(60), c05_theta_vartheta_square_free),
        (6, "square census audit", Some(30), c06_square_census),
        (7, "no overlapping occurrences", Some(60), c07_no_overlapping_occurrences),
        (8, "look-alike centering", Some(30), c08_lookalikes),
        (9, "recurrence of M", Some(30), c09_recurrence),
        (10, "aperiodicity proxies", Some(30), c10_aperiodicity_proxies),
        (11, "Method A", Some(60), c11_method_a),
        (12, "Method B", Some(60), c12_method_b),
        (13, "seeded flip", Some(60), c13_seeded_flip),
        (14, "oracle equivalence", None, c14_oracle_equivalence),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (id, name, limit, run) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed >= Duration::from_secs(secs) => Err(format!("exceeded {secs} s limit")),
            (o, _) => o,
        };
        let limit = limit.map_or("none".to_string(), |s| format!("{s} s"));
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        writeln!(err, "criterion {id:>2} {status} [{:>8.3} s / {limit}] {name}: {detail}", elapsed.as_secs_f64())
            .unwrap();
        if outcome.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
