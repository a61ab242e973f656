// Writing an algebra, an element and a morphism in the .fda format, parsing and checking them.

use superfda::catalog;
use superfda::fda::{check_document, FdaDocument};

const SOURCE: &str = "\
# the T-duality coefficients, declared by hand
algebra bT1 {
  gen c2 : (2,even);
  gen ct2 : (2,even);
  gen h3 : (3,even);
  d h3 = -c2*ct2;
}
cocycle square in bT1 = c2^2 + 2*c2*ct2;
morphism swap : bT1 -> bT1 { c2 = ct2; ct2 = c2; }
";

pub struct FdaTour {
    pub entries: Vec<(String, bool)>,
    pub matches_builtin: bool,
    pub round_trip: bool,
    pub diagnostic: String,
}

pub fn run_example() -> FdaTour {
    let doc = FdaDocument::parse(SOURCE).unwrap();
    let entries = check_document(&doc, "all").into_iter().map(|e| (e.id.clone(), e.is_pass())).collect();
    let builtin = catalog::algebra("bT1").unwrap();
    let text = doc.to_text();
    let bad = "algebra a {\n  gen x : (1,even);\n  d x = x;\n}\n";
    FdaTour {
        entries,
        matches_builtin: **doc.algebra("bT1").unwrap() == *builtin,
        round_trip: FdaDocument::parse(&text).unwrap().to_text() == text,
        diagnostic: FdaDocument::parse(bad).unwrap_err()[0].to_string(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    for (id, ok) in &r.entries {
        println!("{} {id}", if *ok { "ok  " } else { "FAIL" });
    }
    println!("equals built-in bT1: {}, round trip fixpoint: {}", r.matches_builtin, r.round_trip);
    println!("bad input: {}", r.diagnostic);
}
