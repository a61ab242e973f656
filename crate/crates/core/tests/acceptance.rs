// One line per acceptance criterion. The verification suite runs once; each criterion
// collects its entries by id and adds the direct measurements the suite does not carry.

mod common;
mod properties;

use std::time::Instant;

use superfda::clifford::{build_gamma_d9, find_charge_conjugation, lift_to_d11};
use superfda::fda::FdaDocument;
use superfda::report::{Report, ReportEntry};
use superfda::suite::{self, Flags};

struct Outcome {
    ok: bool,
    detail: String,
}

fn entries<'a>(r: &'a Report, prefixes: &[&str]) -> Vec<&'a ReportEntry> {
    r.entries.iter().filter(|e| prefixes.iter().any(|p| e.id == *p || e.id.starts_with(&format!("{p}.")))).collect()
}

fn from_entries(r: &Report, prefixes: &[&str]) -> Outcome {
    let es = entries(r, prefixes);
    let failed: Vec<&str> = es.iter().filter(|e| !e.is_pass()).map(|e| e.id.as_str()).collect();
    let ms: u64 = es.iter().map(|e| e.millis).sum();
    Outcome {
        ok: !es.is_empty() && failed.is_empty(),
        detail: if failed.is_empty() { format!("{} checks, {ms} ms", es.len()) } else { format!("failing: {}", failed.join(", ")) },
    }
}

fn and(mut a: Outcome, ok: bool, extra: String) -> Outcome {
    a.ok &= ok;
    a.detail = format!("{}; {extra}", a.detail);
    a
}

fn clifford_timing() -> (bool, String) {
    let t = Instant::now();
    let g = lift_to_d11(&build_gamma_d9().unwrap()).unwrap();
    let build = t.elapsed();
    let t = Instant::now();
    let c = find_charge_conjugation(&g);
    let solve = t.elapsed();
    (c.is_ok() && build.as_secs_f64() < 1.0 && solve.as_secs_f64() < 10.0, format!("gammas built in {build:.2?}, C solved in {solve:.2?}"))
}

fn criterion_13() -> Outcome {
    let mut failed = Vec::new();
    let mut cases = 0;
    for (name, law, n) in properties::LAWS {
        cases += n;
        if let Err(e) = law(*n) {
            failed.push(format!("{name}: {e}"));
        }
    }
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() { format!("{} laws, {cases} seeded cases", properties::LAWS.len()) } else { failed.join("; ") },
    }
}

fn criterion_14(r: &Report) -> Outcome {
    let base = from_entries(r, &["fda.roundtrip"]);
    let bad = "algebra bad {\n  gen b : (2,even);\n  gen c : (3,even);\n  d b = c;\n  d c = b^2;\n}\n";
    let located = match FdaDocument::parse(bad) {
        Err(d) => d[0].message.contains("d^2") && d[0].pos.line == 4,
        Ok(_) => false,
    };
    let st = common::fuzz(10_000, common::FUZZ_SEED);
    let fuzz_ok = st.panics == 0 && st.unlocated == 0 && st.unstable == 0;
    and(
        base,
        located && fuzz_ok,
        format!("d^2 != 0 located: {located}; fuzz {} inputs, {} rejected, {} panics", st.inputs, st.rejected, st.panics),
    )
}

fn main() {
    let t = Instant::now();
    let r = suite::run("all", &Flags::default()).expect("suite runs");
    eprintln!("suite: {} entries in {:.1?}", r.entries.len(), t.elapsed());
    let (timing_ok, timing) = clifford_timing();

    let m_brane = from_entries(&r, &["mbranes.m2", "mbranes.m5", "mbranes.morphism"]);
    let m_ms: u64 = entries(&r, &["mbranes.m2", "mbranes.m5", "mbranes.morphism"]).iter().map(|e| e.millis).sum();

    let criteria: Vec<(&str, Outcome)> = vec![
        ("Clifford foundation", and(from_entries(&r, &["clifford.anticommutators", "clifford.iib.identity"]), timing_ok, timing.clone())),
        ("charge conjugation", and(from_entries(&r, &["clifford.charge_conjugation"]), timing_ok, timing)),
        ("M-brane Fierz identity", and(m_brane, m_ms < 300_000, "under 5 min".into())),
        ("IIA tower", from_entries(&r, &["iia.tower", "iia.d10.values", "iia.morphism"])),
        ("IIB tower", from_entries(&r, &["iib.tower", "iib.morphism"])),
        ("reduction/oxidation", from_entries(&r, &["cyc.mbranes", "cyc.iia", "cyc.iib"])),
        ("T-duality theorem", from_entries(&r, &["tduality.slice", "tduality.d1", "tduality.d3", "tduality.d5", "tduality.d7", "tduality.d9", "tduality.global"])),
        ("correspondence", from_entries(&r, &["corr"])),
        ("Hori formula", from_entries(&r, &["hori"])),
        ("T-fold pushout", from_entries(&r, &["tfold.a", "tfold.b"])),
        ("F-theory", from_entries(&r, &["ftheory"])),
        ("non-triviality", from_entries(&r, &["superspace.nonexact", "mbranes.nonexact", "iia.nonexact"])),
        ("engine properties", criterion_13()),
        ("format", criterion_14(&r)),
    ];
    let mut failed = Vec::new();
    for (i, (name, o)) in criteria.iter().enumerate() {
        println!("{} criterion {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
