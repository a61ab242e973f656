#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superfda::catalog;
use superfda::fda::FdaDocument;

pub const FUZZ_SEED: u64 = 0x5eed_fda;

#[derive(Debug, Default)]
pub struct FuzzStats {
    pub inputs: usize,
    pub rejected: usize,
    pub accepted: usize,
    pub panics: usize,
    /// rejected inputs whose diagnostic had no usable location
    pub unlocated: usize,
    /// accepted inputs that did not re-serialize to a fixpoint
    pub unstable: usize,
}

pub fn fuzz_seeds() -> Vec<String> {
    let mut v: Vec<String> = ["lS4", "bT1", "ku", "sku", "cycKU", "mink9"].iter().map(|n| catalog::algebra_document(n).unwrap().to_text()).collect();
    v.push(PHI_T_DOC.to_string());
    v
}

pub const PHI_T_DOC: &str = "\
# c2 <-> ct2 on the T-duality coefficients
algebra bT1 {
  gen c2 : (2,even);
  gen ct2 : (2,even);
  gen h3 : (3,even);
  d h3 = -c2*ct2;
}
morphism phiT : bT1 -> bT1 {
  c2 = ct2;
  ct2 = c2;
}
cocycle square in bT1 = (1/2 + i)*c2^2 - 2/3*i*c2*ct2;
";

const ALPHABET: &[u8] = b"{}();:,=*/^+-# \n0123456789abcdegijnopstxw_@>";

fn mutate(rng: &mut ChaCha8Rng, src: &str) -> String {
    let mut b: Vec<u8> = src.bytes().collect();
    for _ in 0..rng.gen_range(1..=4) {
        if b.is_empty() {
            b.push(ALPHABET[rng.gen_range(0..ALPHABET.len())]);
            continue;
        }
        let i = rng.gen_range(0..b.len());
        match rng.gen_range(0..6) {
            0 => {
                b.remove(i);
            }
            1 => b.insert(i, ALPHABET[rng.gen_range(0..ALPHABET.len())]),
            2 => b[i] = ALPHABET[rng.gen_range(0..ALPHABET.len())],
            3 => {
                let j = rng.gen_range(i..b.len().min(i + 40) + 1).min(b.len());
                let seg: Vec<u8> = b[i..j].to_vec();
                let k = rng.gen_range(0..=b.len());
                b.splice(k..k, seg);
            }
            4 => {
                let j = rng.gen_range(i..b.len().min(i + 40) + 1).min(b.len());
                b.drain(i..j);
            }
            _ => {
                let j = rng.gen_range(0..b.len());
                b.swap(i, j);
            }
        }
    }
    String::from_utf8_lossy(&b).into_owned()
}

pub fn fuzz(n: usize, seed: u64) -> FuzzStats {
    let seeds = fuzz_seeds();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = FuzzStats::default();
    for k in 0..n {
        let text = mutate(&mut rng, &seeds[k % seeds.len()]);
        st.inputs += 1;
        match catch_unwind(AssertUnwindSafe(|| FdaDocument::parse(&text))) {
            Err(_) => st.panics += 1,
            Ok(Err(diags)) => {
                st.rejected += 1;
                let lines = text.lines().count().max(1) + 1;
                if diags.is_empty() || diags.iter().any(|d| d.pos.line == 0 || d.pos.line > lines || d.pos.column == 0 || d.message.is_empty()) {
                    st.unlocated += 1;
                }
            }
            Ok(Ok(doc)) => {
                st.accepted += 1;
                let once = doc.to_text();
                let again = FdaDocument::parse(&once).map(|d| d.to_text());
                if again.as_deref() != Ok(once.as_str()) {
                    st.unstable += 1;
                }
            }
        }
    }
    st
}
