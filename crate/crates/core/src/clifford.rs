//! Exact Dirac matrices for 9d, their lift to 11d, the IIB overlay, and the
//! charge conjugation matrix found by intertwiner solving.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::linsolve::{nullspace, SparseRow};
use crate::algebra::{Element, GeneratorTable, Monomial};
use crate::error::{Error, Result};
use crate::report::ReportEntry;
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixQ {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussianRational>,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rows * cols);
        MatrixQ { rows, cols, data: v.iter().map(|&x| GaussianRational::int(x)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn mul(&self, o: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut r = MatrixQ::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &MatrixQ) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &MatrixQ) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut r = MatrixQ::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(j, i, self.get(i, j).clone());
            }
        }
        r
    }

    pub fn dagger(&self) -> MatrixQ {
        let t = self.transpose();
        MatrixQ { rows: t.rows, cols: t.cols, data: t.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn kron(&self, o: &MatrixQ) -> MatrixQ {
        let mut r = MatrixQ::zero(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        r.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        r
    }

    /// `[[a, b], [c, d]]` from square blocks.
    pub fn blocks(a: &MatrixQ, b: &MatrixQ, c: &MatrixQ, d: &MatrixQ) -> MatrixQ {
        let n = a.rows;
        let mut r = MatrixQ::zero(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, a.get(i, j).clone());
                r.set(i, j + n, b.get(i, j).clone());
                r.set(i + n, j, c.get(i, j).clone());
                r.set(i + n, j + n, d.get(i, j).clone());
            }
        }
        r
    }

    pub fn anticommutator(&self, o: &MatrixQ) -> MatrixQ {
        self.mul(o).add(&o.mul(self))
    }

    pub fn commutator(&self, o: &MatrixQ) -> MatrixQ {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// `λ` with `self = λ·o`, if any (both nonzero).
    pub fn ratio_to(&self, o: &MatrixQ) -> Option<GaussianRational> {
        let (i, j, b) = o.nonzeros().next()?;
        let lambda = self.get(i, j) / b;
        (o.scale(&lambda) == *self).then_some(lambda)
    }

    /// Row-major text, one row per line, entries in the scalar literal syntax.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

fn pauli(c: char) -> MatrixQ {
    match c {
        'I' => MatrixQ::from_ints(2, 2, &[1, 0, 0, 1]),
        'X' => MatrixQ::from_ints(2, 2, &[0, 1, 1, 0]),
        'Z' => MatrixQ::from_ints(2, 2, &[1, 0, 0, -1]),
        // i·σ2, real
        'A' => MatrixQ::from_ints(2, 2, &[0, 1, -1, 0]),
        _ => unreachable!(),
    }
}

/// Eight real symmetric pairwise anticommuting 16×16 matrices squaring to one.
/// Each word has an even number of `A` factors, which keeps the product symmetric.
const EUCLIDEAN_WORDS: [&str; 8] = ["IIIX", "IIIZ", "IIAA", "IAXA", "XAZA", "ZAZA", "AIZA", "AXXA"];

fn euclidean_generators() -> Vec<MatrixQ> {
    EUCLIDEAN_WORDS
        .iter()
        .map(|w| w.chars().map(pauli).reduce(|a, b| a.kron(&b)).unwrap())
        .collect()
}

/// Minkowski metric diagonal entry, mostly plus.
pub fn eta(a: usize) -> i64 {
    if a == 0 {
        -1
    } else {
        1
    }
}

fn check_clifford(gammas: &[MatrixQ]) -> Result<()> {
    let n = gammas[0].rows;
    let id = MatrixQ::identity(n);
    for a in 0..gammas.len() {
        for b in a..gammas.len() {
            let expect = if a == b { id.scale(&GaussianRational::int(-2 * eta(a))) } else { MatrixQ::zero(n, n) };
            if gammas[a].anticommutator(&gammas[b]) != expect {
                return Err(Error::ConstructionInvalid(format!("Clifford relation fails for ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// γ₀…γ₈ on ℂ¹⁶ with `γ_j = i E_j` and `γ₀ = E₁⋯E₈`.
pub fn build_gamma_d9() -> Result<Vec<MatrixQ>> {
    let e = euclidean_generators();
    let i = GaussianRational::i();
    let mut g0 = MatrixQ::identity(16);
    for m in &e {
        g0 = g0.mul(m);
    }
    let mut gammas = vec![g0];
    gammas.extend(e.iter().map(|m| m.scale(&i)));
    check_clifford(&gammas)?;
    for (a, g) in gammas.iter().enumerate() {
        let herm = if a == 0 { g.dagger() == *g } else { g.dagger() == g.scale(&GaussianRational::int(-1)) };
        if !herm {
            return Err(Error::ConstructionInvalid(format!("hermiticity of gamma_{a}")));
        }
    }
    Ok(gammas)
}

/// Which gamma matrices a product index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Γ₀…Γ₁₀ of the 11d Clifford algebra.
    Iia,
    /// Γ₀…Γ₈ together with Γ₉^IIB.
    Iib,
}

/// Extra factor multiplied on the right of an index product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trailing {
    None,
    G9,
    G10,
    G9G10,
}

#[derive(Clone, Debug)]
pub struct CliffordModel {
    /// Γ₀…Γ₁₀, 32×32.
    pub gammas: Vec<MatrixQ>,
    /// Γ^IIB₀…Γ^IIB₉.
    pub iib: Vec<MatrixQ>,
    /// σ₁, σ₂, σ₃.
    pub sigma: [MatrixQ; 3],
    pub charge_conjugation: MatrixQ,
}

/// Γ_{a≤8} = offdiag(γ_a, γ_a), Γ₉ = [[0, I], [−I, 0]], Γ₁₀ = diag(iI, −iI).
pub fn lift_to_d11(d9: &[MatrixQ]) -> Result<Vec<MatrixQ>> {
    let z = MatrixQ::zero(16, 16);
    let id = MatrixQ::identity(16);
    let neg = GaussianRational::int(-1);
    let mut g: Vec<MatrixQ> = d9.iter().map(|m| MatrixQ::blocks(&z, m, m, &z)).collect();
    g.push(MatrixQ::blocks(&z, &id, &id.scale(&neg), &z));
    let i = GaussianRational::i();
    g.push(MatrixQ::blocks(&id.scale(&i), &z, &z, &id.scale(&-i)));
    check_clifford(&g)?;
    Ok(g)
}

/// The IIB overlay: Γ^IIB_a = Γ_a for a ≤ 8 and Γ^IIB₉ = [[0, I], [I, 0]]; plus σ₁, σ₂, σ₃.
pub fn gamma_iib(gammas: &[MatrixQ]) -> (Vec<MatrixQ>, [MatrixQ; 3]) {
    let z = MatrixQ::zero(16, 16);
    let id = MatrixQ::identity(16);
    let mut iib: Vec<MatrixQ> = gammas[..9].to_vec();
    iib.push(MatrixQ::blocks(&z, &id, &id, &z));
    let g9g10 = gammas[9].mul(&gammas[10]);
    let sigma = [gammas[9].clone(), g9g10.scale(&GaussianRational::int(-1)), gammas[10].clone()];
    (iib, sigma)
}

/// Solves `Γ_aᵀ X = s X Γ_a` for all `a` over the 1024 entries of `X`.
pub fn intertwiners(gammas: &[MatrixQ], s: i64) -> Vec<MatrixQ> {
    let n = gammas[0].rows;
    let sign = GaussianRational::int(s);
    let mut rows: Vec<SparseRow> = Vec::new();
    for g in gammas {
        for i in 0..n {
            for j in 0..n {
                // (Γᵀ X)_ij − s (X Γ)_ij
                let mut row: SparseRow = BTreeMap::new();
                for k in 0..n {
                    let a = g.get(k, i);
                    if !a.is_zero() {
                        *row.entry(k * n + j).or_insert_with(GaussianRational::zero) += a.clone();
                    }
                    let b = g.get(k, j);
                    if !b.is_zero() {
                        *row.entry(i * n + k).or_insert_with(GaussianRational::zero) -= &(&sign * b);
                    }
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    nullspace(&rows, n * n)
        .into_iter()
        .map(|v| {
            let m = MatrixQ { rows: n, cols: n, data: v };
            // first nonzero entry in row-major order normalized to 1
            let (_, _, lead) = m.nonzeros().next().expect("nullspace vector is nonzero");
            let inv = lead.inv().unwrap();
            m.scale(&inv)
        })
        .collect()
}

/// Selects the intertwiner making every `C Γ^a` symmetric.
pub fn find_charge_conjugation(gammas: &[MatrixQ]) -> Result<MatrixQ> {
    let mut good = Vec::new();
    for s in [1, -1] {
        for c in intertwiners(gammas, s) {
            if gammas.iter().all(|g| c.mul(g).is_symmetric()) {
                good.push(c);
            }
        }
    }
    match good.len() {
        0 => Err(Error::NoValidCandidate),
        1 => Ok(good.pop().unwrap()),
        _ => Err(Error::AmbiguousCandidate),
    }
}

impl CliffordModel {
    pub fn build() -> Result<CliffordModel> {
        let d9 = build_gamma_d9()?;
        let gammas = lift_to_d11(&d9)?;
        let (iib, sigma) = gamma_iib(&gammas);
        let charge_conjugation = find_charge_conjugation(&gammas)?;
        Ok(CliffordModel { gammas, iib, sigma, charge_conjugation })
    }

    /// The process-wide model (construction is deterministic).
    pub fn shared() -> &'static CliffordModel {
        static MODEL: std::sync::OnceLock<CliffordModel> = std::sync::OnceLock::new();
        MODEL.get_or_init(|| CliffordModel::build().expect("fixed Clifford recipe"))
    }

    pub fn dim(&self) -> usize {
        self.gammas[0].rows
    }

    pub fn gamma(&self, conv: Convention, a: usize) -> Result<&MatrixQ> {
        let list = match conv {
            Convention::Iia => &self.gammas,
            Convention::Iib => &self.iib,
        };
        list.get(a).ok_or(Error::IndexOutOfRange { index: a, len: list.len() })
    }

    /// Γ^a = η^{ab} Γ_b.
    pub fn gamma_upper(&self, conv: Convention, a: usize) -> Result<MatrixQ> {
        Ok(self.gamma(conv, a)?.scale(&GaussianRational::int(eta(a))))
    }

    pub fn trailing(&self, t: Trailing) -> MatrixQ {
        match t {
            Trailing::None => MatrixQ::identity(self.dim()),
            Trailing::G9 => self.gammas[9].clone(),
            Trailing::G10 => self.gammas[10].clone(),
            Trailing::G9G10 => self.gammas[9].mul(&self.gammas[10]),
        }
    }

    /// `(1/p!) Σ_σ sgn(σ) Γ_{a_σ(1)} ⋯ Γ_{a_σ(p)}`, expanded over subsets.
    pub fn antisymmetrized_product(&self, indices: &[usize], conv: Convention) -> Result<MatrixQ> {
        let mats: Vec<&MatrixQ> = indices.iter().map(|&a| self.gamma(conv, a)).collect::<Result<_>>()?;
        let p = mats.len();
        let n = self.dim();
        // f[mask] = signed sum over orderings of the chosen positions
        let mut f: Vec<Option<MatrixQ>> = vec![None; 1 << p];
        f[0] = Some(MatrixQ::identity(n));
        for mask in 1usize..(1 << p) {
            let mut acc = MatrixQ::zero(n, n);
            for j in 0..p {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let before = (mask & ((1 << j) - 1)).count_ones();
                let rest = f[mask & !(1 << j)].as_ref().unwrap();
                let term = mats[j].mul(rest);
                acc = if before % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            f[mask] = Some(acc);
        }
        let full = f.pop().unwrap().unwrap();
        Ok(full.scale(&GaussianRational::inv_factorial(p as u32)))
    }

    /// Ordered product of distinct indices, signed by the sorting permutation; zero on repeats.
    /// Agrees with the antisymmetrized product whenever the factors anticommute.
    pub fn ordered_product(&self, indices: &[usize], conv: Convention) -> Result<MatrixQ> {
        let mut idx = indices.to_vec();
        let mut neg = false;
        for i in 0..idx.len() {
            for j in 0..idx.len() - 1 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    neg = !neg;
                }
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Ok(MatrixQ::zero(self.dim(), self.dim()));
        }
        let mut m = MatrixQ::identity(self.dim());
        for &a in &idx {
            m = m.mul(self.gamma(conv, a)?);
        }
        Ok(if neg { m.scale(&GaussianRational::int(-1)) } else { m })
    }

    /// `C·Γ_{a₁⋯a_p}·T`, the matrix of the pairing `ψ̄ Γ_{a₁⋯a_p} T ψ`.
    pub fn pairing_matrix(&self, indices: &[usize], conv: Convention, t: Trailing) -> Result<MatrixQ> {
        let p = self.ordered_product(indices, conv)?;
        Ok(self.charge_conjugation.mul(&p).mul(&self.trailing(t)))
    }

    /// SHA-256 over the rendered Γ and C matrices.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for g in &self.gammas {
            h.update(g.render().as_bytes());
        }
        h.update(self.charge_conjugation.render().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (a, g) in self.gammas.iter().enumerate() {
            let _ = writeln!(s, "# Gamma_{a}");
            s.push_str(&g.render());
        }
        let _ = writeln!(s, "# Gamma9_IIB");
        s.push_str(&self.iib[9].render());
        let _ = writeln!(s, "# C");
        s.push_str(&self.charge_conjugation.render());
        s
    }
}

/// `Σ_{αβ} M_{αβ} ψ^α ψ^β` with commuting ψ's; only the symmetric part survives.
pub fn spinor_quadratic(m: &MatrixQ, psi: &[usize]) -> Vec<(Monomial, GaussianRational)> {
    let mut acc: BTreeMap<(usize, usize), GaussianRational> = BTreeMap::new();
    for (i, j, v) in m.nonzeros() {
        let key = if i <= j { (i, j) } else { (j, i) };
        *acc.entry(key).or_insert_with(GaussianRational::zero) += v.clone();
    }
    let mut out = Vec::new();
    for ((i, j), v) in acc {
        if v.is_zero() {
            continue;
        }
        let (a, b) = (psi[i] as u32, psi[j] as u32);
        let mono = if a == b {
            Monomial(smallvec::smallvec![(a, 2)])
        } else if a < b {
            Monomial(smallvec::smallvec![(a, 1), (b, 1)])
        } else {
            Monomial(smallvec::smallvec![(b, 1), (a, 1)])
        };
        out.push((mono, v));
    }
    out
}

/// `prefactor · (ψ̄ M ψ) ∧ e^{a₁} ∧ ⋯ ∧ e^{a_p}` for explicit generator ids.
pub fn bilinear_element(table: &GeneratorTable, m: &MatrixQ, psi: &[usize], e_ids: &[usize], prefactor: &GaussianRational) -> Result<Element> {
    if psi.len() != m.rows {
        return Err(Error::DimensionMismatch(format!("{} spinor generators for a {}×{} matrix", psi.len(), m.rows, m.cols)));
    }
    let q = Element::from_terms(spinor_quadratic(m, psi).into_iter().map(|(mo, c)| (mo, &c * prefactor)));
    let mut es = Element::one();
    for &id in e_ids {
        es = table.mul(&es, &Element::generator(id));
    }
    Ok(table.mul(&q, &es))
}

/// Which pairing a brane form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BilinearSpec {
    pub rank: usize,
    pub convention: Convention,
    pub trailing: Trailing,
}

/// `prefactor · Σ_{a₁…a_p} (ψ̄ Γ_{a₁⋯a_p} T ψ) e^{a₁}⋯e^{a_p}` over all index tuples below
/// `e_ids.len()`, computed as `p!` times the sum over increasing tuples.
pub fn form_sum(table: &GeneratorTable, model: &CliffordModel, spec: BilinearSpec, psi: &[usize], e_ids: &[usize], prefactor: &GaussianRational) -> Result<Element> {
    let p = spec.rank;
    let mut fact = GaussianRational::one();
    for k in 2..=p {
        fact = &fact * &GaussianRational::int(k as i64);
    }
    let coeff = prefactor * &fact;
    let sets = increasing_tuples(e_ids.len(), p);
    let parts: Vec<Element> = sets
        .par_iter()
        .map(|set| {
            let m = model.pairing_matrix(set, spec.convention, spec.trailing)?;
            if m.is_zero() {
                return Ok(Element::zero());
            }
            let ids: Vec<usize> = set.iter().map(|&a| e_ids[a]).collect();
            bilinear_element(table, &m, psi, &ids, &coeff)
        })
        .collect::<Result<_>>()?;
    let mut out = Element::zero();
    for x in parts {
        out = out + x;
    }
    Ok(out)
}

/// All strictly increasing `p`-tuples from `0..n`, lexicographically.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(n, p, a + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, p, 0, &mut Vec::new(), &mut out);
    out
}

/// The 66 anticommutators of the 11d model, and that exactly one intertwiner makes every `C Γ^a` symmetric.
pub fn check_foundation(model: &CliffordModel) -> Vec<ReportEntry> {
    let start = std::time::Instant::now();
    let n = model.dim();
    let id = MatrixQ::identity(n);
    let mut failed = Vec::new();
    let mut count = 0;
    for a in 0..model.gammas.len() {
        for b in a..model.gammas.len() {
            count += 1;
            let expect = if a == b { id.scale(&GaussianRational::int(-2 * eta(a))) } else { MatrixQ::zero(n, n) };
            if model.gammas[a].anticommutator(&model.gammas[b]) != expect {
                failed.push(format!("({a},{b})"));
            }
        }
    }
    let mut anti = if failed.is_empty() {
        ReportEntry::pass("clifford.anticommutators", format!("{count} relations Gamma_a Gamma_b + Gamma_b Gamma_a = -2 eta_ab hold"))
    } else {
        ReportEntry::fail("clifford.anticommutators", format!("{} of {count} relations fail", failed.len()), Some(failed.join(" ")))
    };
    anti.millis = start.elapsed().as_millis() as u64;

    let start = std::time::Instant::now();
    let mut candidates = Vec::new();
    for s in [1, -1] {
        for c in intertwiners(&model.gammas, s) {
            let symmetric = model.gammas.iter().filter(|g| c.mul(g).is_symmetric()).count();
            candidates.push((s, symmetric, c));
        }
    }
    let good: Vec<_> = candidates.iter().filter(|(_, k, _)| *k == model.gammas.len()).collect();
    let summary = candidates.iter().map(|(s, k, _)| format!("s={s:+}: {k}/11 symmetric")).collect::<Vec<_>>().join(", ");
    let mut cc = match good.as_slice() {
        [(_, _, c)] if *c == model.charge_conjugation => ReportEntry::pass("clifford.charge_conjugation", format!("unique C with all C Gamma^a symmetric ({summary})")),
        [_] => ReportEntry::fail("clifford.charge_conjugation", "the unique candidate differs from the model's C", Some(summary)),
        _ => ReportEntry::fail("clifford.charge_conjugation", format!("{} valid candidates", good.len()), Some(summary)),
    };
    cc.millis = start.elapsed().as_millis() as u64;
    vec![anti, cc]
}

/// The IIB relations that do and do not hold.
pub fn check_iib_relations(model: &CliffordModel) -> Vec<ReportEntry> {
    let mut out = Vec::new();
    let id = MatrixQ::identity(model.dim());
    let g9b = &model.iib[9];
    let sq_ok = g9b.mul(g9b) == id;
    out.push(ReportEntry::from_bool(
        "clifford.iib.not_clifford",
        sq_ok,
        "(Gamma9_IIB)^2 = +1, while a Clifford generator of eta_99 = +1 would square to -1",
    ));
    let mut ok = true;
    let mut first_bad = String::new();
    for s in &model.sigma {
        for a in 0..9 {
            for b in a + 1..9 {
                let gab = model.iib[a].mul(&model.iib[b]);
                if !gab.commutator(s).is_zero() && ok {
                    ok = false;
                    first_bad = format!("[Gamma_{a}{b}, sigma] != 0");
                }
            }
            let ga9 = model.iib[a].mul(g9b);
            if !ga9.commutator(s).is_zero() && ok {
                ok = false;
                first_bad = format!("[Gamma_{a} Gamma9_IIB, sigma] != 0");
            }
        }
    }
    out.push(ReportEntry::from_bool(
        "clifford.iib.sigma_invariance",
        ok,
        if ok { "sigma_i commute with all IIB rotation generators".to_string() } else { first_bad },
    ));
    let g9g10 = model.gammas[9].mul(&model.gammas[10]);
    let ok = model.iib.iter().all(|g| g9g10.commutator(g).is_zero());
    out.push(ReportEntry::from_bool(
        "clifford.iib.rotation_invariance",
        ok,
        "[Gamma9 Gamma10, Gamma^IIB_a] = 0 for a = 0..9",
    ));
    let expect = g9g10.scale(&GaussianRational::i());
    out.push(ReportEntry::from_bool("clifford.iib.identity", *g9b == expect, "Gamma9_IIB = i Gamma9 Gamma10"));
    out
}

/// Observed phases λ_p with `(CΓ_{a₁⋯a_p})† = λ_p CΓ_{a₁⋯a_p}` for p = 0…5.
pub fn hermiticity_phases(model: &CliffordModel) -> Vec<(usize, Option<GaussianRational>)> {
    (0..=5)
        .map(|p| {
            let mut phase: Option<GaussianRational> = None;
            for set in increasing_tuples(11, p) {
                let m = model.pairing_matrix(&set, Convention::Iia, Trailing::None).unwrap();
                let Some(l) = m.dagger().ratio_to(&m) else { return (p, None) };
                match &phase {
                    None => phase = Some(l),
                    Some(q) if *q != l => return (p, None),
                    _ => {}
                }
            }
            (p, phase)
        })
        .collect()
}

/// Diagnostic comparison against the sign pattern `(−1)^{p(p−1)/2}`; failures are skip entries, never fails.
pub fn check_hermiticity_pattern(model: &CliffordModel) -> Vec<ReportEntry> {
    hermiticity_phases(model)
        .into_iter()
        .map(|(p, phase)| {
            let expected = if (p * p.saturating_sub(1) / 2) % 2 == 0 { GaussianRational::one() } else { GaussianRational::int(-1) };
            let id = format!("clifford.hermiticity.p{p}");
            match phase {
                Some(l) if l == expected => ReportEntry::pass(&id, format!("(C Gamma_(p))^dagger = {l} C Gamma_(p) as expected")),
                Some(l) => ReportEntry::skip(&id, format!("observed phase {l}, reality display suggests {expected} (diagnostic only)")),
                None => ReportEntry::skip(&id, "no uniform phase across index sets (diagnostic only)"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d9_and_d11_relations() {
        let d9 = build_gamma_d9().unwrap();
        assert_eq!(d9.len(), 9);
        assert_eq!(d9[0].mul(&d9[0]), MatrixQ::identity(16));
        let g = lift_to_d11(&d9).unwrap();
        assert_eq!(g.len(), 11);
        let (iib, _) = gamma_iib(&g);
        assert_eq!(iib[9], g[9].mul(&g[10]).scale(&GaussianRational::i()));
    }

    #[test]
    fn antisymmetrization() {
        let m = CliffordModel::shared();
        let a = m.antisymmetrized_product(&[0, 1], Convention::Iia).unwrap();
        assert_eq!(a, m.gammas[0].mul(&m.gammas[1]));
        assert!(m.antisymmetrized_product(&[0, 0], Convention::Iia).unwrap().is_zero());
        let lit = m.antisymmetrized_product(&[3, 1, 9, 10], Convention::Iia).unwrap();
        assert_eq!(lit, m.ordered_product(&[3, 1, 9, 10], Convention::Iia).unwrap());
        // the IIB overlay does not anticommute: literal antisymmetrization kills Gamma_{a 9}
        assert!(m.antisymmetrized_product(&[2, 9], Convention::Iib).unwrap().is_zero());
        assert!(!m.ordered_product(&[2, 9], Convention::Iib).unwrap().is_zero());
    }

    #[test]
    fn quadratic_form_symmetric_part() {
        let mut anti = MatrixQ::zero(2, 2);
        anti.set(0, 1, GaussianRational::one());
        anti.set(1, 0, GaussianRational::int(-1));
        assert!(spinor_quadratic(&anti, &[0, 1]).is_empty());
    }
}
