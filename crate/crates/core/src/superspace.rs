//! Super-Minkowski CE algebras in 9, 10 and 11 dimensions, their central
//! extensions, the fiber split along a circle generator, and fiber products.

use std::sync::{Arc, OnceLock};

use crate::algebra::{renaming_isomorphism, solve_exactness, Bidegree, DegreeCaps, DgaMorphism, Element, FreeDga, GeneratorTable, Monomial};
use crate::clifford::{bilinear_element, CliffordModel, Convention};
use crate::error::{Error, Result};
use crate::report::ReportEntry;
use crate::scalar::GaussianRational;

pub const SPINOR_DIM: usize = 32;

/// One bosonic direction: generator name and the gamma matrix defining its differential.
#[derive(Clone, Debug)]
pub struct Direction {
    pub name: String,
    pub convention: Convention,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct SuperMinkowskiSpec {
    pub label: String,
    pub directions: Vec<Direction>,
}

impl SuperMinkowskiSpec {
    fn plain(label: &str, d: usize) -> Self {
        SuperMinkowskiSpec {
            label: label.to_string(),
            directions: (0..d).map(|a| Direction { name: format!("e{a}"), convention: Convention::Iia, index: a }).collect(),
        }
    }

    /// ℝ^{10,1|32}
    pub fn m11() -> Self {
        Self::plain("m11", 11)
    }

    /// ℝ^{9,1|16+16̄}
    pub fn iia10() -> Self {
        Self::plain("iia10", 10)
    }

    /// ℝ^{9,1|16+16}, with the tenth direction paired through Γ^IIB₉.
    pub fn iib10() -> Self {
        let mut s = Self::plain("iib10", 10);
        s.directions[9].convention = Convention::Iib;
        s
    }

    /// ℝ^{8,1|16+16}
    pub fn mink9() -> Self {
        Self::plain("mink9", 9)
    }
}

pub fn psi_name(alpha: usize) -> String {
    format!("psi{}", alpha + 1)
}

/// Ids of `psi1..psi32` in `table`.
pub fn psi_ids(table: &GeneratorTable) -> Result<Vec<usize>> {
    (0..SPINOR_DIM).map(|a| table.try_id(&psi_name(a))).collect()
}

/// The 2-form `ψ̄ Γ ψ` for a given pairing matrix `C Γ`, no ½.
pub fn spinor_two_form(table: &GeneratorTable, model: &CliffordModel, conv: Convention, a: usize, upper: bool) -> Result<Element> {
    let g = if upper { model.gamma_upper(conv, a)? } else { model.gamma(conv, a)?.clone() };
    let m = model.charge_conjugation.mul(&g);
    bilinear_element(table, &m, &psi_ids(table)?, &[], &GaussianRational::one())
}

/// Generators `e^a` (1,even) then `ψ^α` (1,odd); `dψ = 0`, `d e^a = ψ̄ Γ^a ψ`.
pub fn super_minkowski(spec: &SuperMinkowskiSpec, model: &CliffordModel) -> Result<FreeDga> {
    let mut decls: Vec<(String, Bidegree)> = spec.directions.iter().map(|d| (d.name.clone(), Bidegree::even(1))).collect();
    decls.extend((0..SPINOR_DIM).map(|a| (psi_name(a), Bidegree::odd(1))));
    let table = GeneratorTable::new(&decls)?;
    let mut d = Vec::with_capacity(table.len());
    for dir in &spec.directions {
        d.push(spinor_two_form(&table, model, dir.convention, dir.index, true)?);
    }
    d.extend((0..SPINOR_DIM).map(|_| Element::zero()));
    FreeDga::declare(spec.label.clone(), table, d)
}

/// Adjoining one generator killing a closed cocycle.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    pub base: Arc<FreeDga>,
    pub cocycle: Element,
    /// Id of the new generator in `result`.
    pub generator: usize,
    pub result: Arc<FreeDga>,
}

impl ExtensionStep {
    pub fn new(base: Arc<FreeDga>, cocycle: Element, name: &str, label: &str) -> Result<ExtensionStep> {
        let b = match base.homogeneity(&cocycle) {
            crate::algebra::Homogeneity::Homogeneous(b) => b,
            _ => return Err(Error::NotClosed(format!("cocycle for {name} is not homogeneous and nonzero"))),
        };
        if !base.is_closed(&cocycle) {
            return Err(Error::NotClosed(format!("cocycle for {name}: d = {}", base.render_truncated(&base.d(&cocycle), 8))));
        }
        let nb = Bidegree::new(b.n - 1, b.parity);
        let c = cocycle.clone();
        let result = base.adjoin(label, &[(name, nb)], |_| Ok(vec![c]))?;
        Ok(ExtensionStep { generator: base.len(), base, cocycle, result: Arc::new(result) })
    }

    pub fn generator_name(&self) -> &str {
        self.result.name(self.generator)
    }

    /// Dual of the projection result → base: the inclusion CE(base) ↪ CE(result).
    pub fn projection(&self) -> DgaMorphism {
        let images = (0..self.base.len()).map(Element::generator).collect();
        DgaMorphism::new(self.base.clone(), self.result.clone(), images, false).expect("prefix inclusion")
    }

    /// The classifying map base → b^{p+1}ℝ, dually CE(b^{p+1}ℝ) → CE(base).
    pub fn cocycle_map(&self) -> Result<DgaMorphism> {
        let b = self.result.bidegree(self.generator).shifted(Bidegree::even(1));
        let line = line_algebra("omega", b)?;
        DgaMorphism::new(Arc::new(line), self.base.clone(), vec![self.cocycle.clone()], false)
    }

    pub fn split(&self, x: &Element) -> FiberSplit {
        fiber_integrate(&self.result, self.generator, x)
    }
}

/// CE(b^{n-1}ℝ): one closed generator of bidegree `b`.
pub fn line_algebra(name: &str, b: Bidegree) -> Result<FreeDga> {
    FreeDga::declare(format!("b{}R", b.n - 1), GeneratorTable::new(&[(name, b)])?, vec![Element::zero()])
}

/// `x = restriction − e ∧ integral`, neither part containing `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSplit {
    pub restriction: Element,
    pub integral: Element,
}

pub fn fiber_integrate(table: &GeneratorTable, e: usize, x: &Element) -> FiberSplit {
    debug_assert!(table.is_exterior(e) && table.bidegree(e) == Bidegree::even(1));
    let (en, es) = (table.bidegree(e).n.rem_euclid(2) == 1, table.bidegree(e).parity.bit() == 1);
    let mut restriction = Element::zero();
    let mut integral = Element::zero();
    for (m, c) in x.terms() {
        if !m.contains(e) {
            restriction.add_term(m.clone(), c.clone());
            continue;
        }
        // move e to the front past the factors with smaller id
        let mut pn = false;
        let mut ps = false;
        let mut rest = Monomial::unit();
        for &(id, k) in m.factors() {
            if id as usize == e {
                continue;
            }
            rest.0.push((id, k));
            if (id as usize) < e && k % 2 == 1 {
                let b = table.bidegree(id as usize);
                pn ^= b.n.rem_euclid(2) == 1;
                ps ^= b.parity.bit() == 1;
            }
        }
        let neg = (en && pn) ^ (es && ps);
        // m = ± e·rest, and x ∋ c·m = −e ∧ (∓c·rest)
        integral.add_term(rest, if neg { c.clone() } else { -c });
    }
    FiberSplit { restriction, integral }
}

/// Rebuilds `restriction − e ∧ integral`.
pub fn fiber_reconstruct(table: &GeneratorTable, e: usize, s: &FiberSplit) -> Element {
    &s.restriction - &table.mul(&Element::generator(e), &s.integral)
}

/// The doubled algebra over a common base with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub doubled: Arc<FreeDga>,
    /// CE(A-result) → CE(doubled)
    pub p_a: DgaMorphism,
    /// CE(B-result) → CE(doubled)
    pub p_b: DgaMorphism,
}

pub fn fiber_product(a: &ExtensionStep, b: &ExtensionStep, name_a: &str, name_b: &str, label: &str) -> Result<FiberProduct> {
    if *a.base != *b.base {
        return Err(Error::TableMismatch("fiber product over different bases".into()));
    }
    let ba = a.result.bidegree(a.generator);
    let bb = b.result.bidegree(b.generator);
    let (ca, cb) = (a.cocycle.clone(), b.cocycle.clone());
    let doubled = Arc::new(a.base.adjoin(label, &[(name_a, ba), (name_b, bb)], |_| Ok(vec![ca, cb]))?);
    let p_a = DgaMorphism::by_name(a.result.clone(), doubled.clone(), vec![(a.generator_name(), doubled.gen(name_a))])?;
    let p_b = DgaMorphism::by_name(b.result.clone(), doubled.clone(), vec![(b.generator_name(), doubled.gen(name_b))])?;
    Ok(FiberProduct { doubled, p_a, p_b })
}

/// Every spacetime of the extension tower, built once.
#[derive(Debug)]
pub struct Spacetimes {
    pub mink9: Arc<FreeDga>,
    pub iia10: Arc<FreeDga>,
    pub iib10: Arc<FreeDga>,
    pub m11: Arc<FreeDga>,
    /// ψ̄Γ₉ψ on the 9d algebra.
    pub c2_iia: Element,
    /// ψ̄Γ₉^IIBψ on the 9d algebra.
    pub c2_iib: Element,
    /// ψ̄Γ₁₀ψ on the IIA algebra.
    pub c2_m: Element,
    pub ext_iia: ExtensionStep,
    pub ext_iib: ExtensionStep,
    /// IIA (direct build) extended by e10.
    pub ext_m: ExtensionStep,
    pub doubled: FiberProduct,
    /// CE(iia10) → CE(doubled), e9 ↦ e9A.
    pub to_doubled_a: DgaMorphism,
    /// CE(iib10) → CE(doubled), e9 ↦ e9B.
    pub to_doubled_b: DgaMorphism,
}

impl Spacetimes {
    pub fn build(model: &CliffordModel) -> Result<Spacetimes> {
        let mink9 = Arc::new(super_minkowski(&SuperMinkowskiSpec::mink9(), model)?);
        let iia10 = Arc::new(super_minkowski(&SuperMinkowskiSpec::iia10(), model)?);
        let iib10 = Arc::new(super_minkowski(&SuperMinkowskiSpec::iib10(), model)?);
        let m11 = Arc::new(super_minkowski(&SuperMinkowskiSpec::m11(), model)?);
        let c2_iia = spinor_two_form(&mink9, model, Convention::Iia, 9, false)?;
        let c2_iib = spinor_two_form(&mink9, model, Convention::Iib, 9, false)?;
        let c2_m = spinor_two_form(&iia10, model, Convention::Iia, 10, false)?;
        let ext_iia = ExtensionStep::new(mink9.clone(), c2_iia.clone(), "e9", "iia10_ext")?;
        let ext_iib = ExtensionStep::new(mink9.clone(), c2_iib.clone(), "e9", "iib10_ext")?;
        let ext_m = ExtensionStep::new(iia10.clone(), c2_m.clone(), "e10", "m11_ext")?;
        let doubled = fiber_product(&ext_iia, &ext_iib, "e9A", "e9B", "doubled")?;
        let to_doubled_a = DgaMorphism::by_name(iia10.clone(), doubled.doubled.clone(), vec![("e9", doubled.doubled.gen("e9A"))])?;
        let to_doubled_b = DgaMorphism::by_name(iib10.clone(), doubled.doubled.clone(), vec![("e9", doubled.doubled.gen("e9B"))])?;
        Ok(Spacetimes { mink9, iia10, iib10, m11, c2_iia, c2_iib, c2_m, ext_iia, ext_iib, ext_m, doubled, to_doubled_a, to_doubled_b })
    }

    pub fn shared() -> &'static Spacetimes {
        static S: OnceLock<Spacetimes> = OnceLock::new();
        S.get_or_init(|| Spacetimes::build(CliffordModel::shared()).expect("spacetimes build"))
    }

    /// Canonical renaming CE(m11) → CE(m11 built as IIA + e10).
    pub fn m11_to_ext(&self) -> Result<DgaMorphism> {
        Ok(renaming_isomorphism(&self.m11, &self.ext_m.result, &[])?.0)
    }

    /// CE(iia10) → CE(9d + e9 via c2_IIA), matching names.
    pub fn iia_to_ext(&self) -> Result<DgaMorphism> {
        Ok(renaming_isomorphism(&self.iia10, &self.ext_iia.result, &[])?.0)
    }

    pub fn iib_to_ext(&self) -> Result<DgaMorphism> {
        Ok(renaming_isomorphism(&self.iib10, &self.ext_iib.result, &[])?.0)
    }
}

/// Closedness of the three 2-cocycles, agreement of extension routes with the direct builds,
/// and non-exactness of the 2-cocycles.
pub fn verify_extension_tower(s: &Spacetimes) -> Vec<ReportEntry> {
    let mut out = Vec::new();
    let closed = [
        ("c2_IIA", &s.mink9, &s.c2_iia),
        ("c2_IIB", &s.mink9, &s.c2_iib),
        ("c2_M", &s.iia10, &s.c2_m),
    ];
    for (name, alg, c) in closed {
        let dc = alg.d(c);
        let id = format!("superspace.closed.{name}");
        out.push(if dc.is_zero() {
            ReportEntry::pass(&id, format!("d {name} = 0 ({} terms)", c.len()))
        } else {
            ReportEntry::fail(&id, format!("d {name} != 0"), Some(alg.render_truncated(&dc, 16)))
        });
    }
    let routes = [
        ("superspace.tower.iia", &s.ext_iia.result, &s.iia10),
        ("superspace.tower.iib", &s.ext_iib.result, &s.iib10),
        ("superspace.tower.m", &s.ext_m.result, &s.m11),
    ];
    for (id, ext, direct) in routes {
        out.push(match renaming_isomorphism(ext, direct, &[]) {
            Ok(_) => ReportEntry::pass(id, format!("{} agrees with {} up to generator order", ext.label(), direct.label())),
            Err(e) => ReportEntry::fail(id, e.to_string(), None),
        });
    }
    // second route to 11d: extend the extension-built IIA algebra
    let c2m_on_ext = DgaMorphism::by_name(s.iia10.clone(), s.ext_iia.result.clone(), vec![])
        .map(|f| f.apply(&s.c2_m));
    out.push(match c2m_on_ext.and_then(|c| ExtensionStep::new(s.ext_iia.result.clone(), c, "e10", "m11_ext2")) {
        Ok(step) => match renaming_isomorphism(&step.result, &s.m11, &[]) {
            Ok(_) => ReportEntry::pass("superspace.tower.routes", "9d→IIA→11d and direct 11d agree up to renaming"),
            Err(e) => ReportEntry::fail("superspace.tower.routes", e.to_string(), None),
        },
        Err(e) => ReportEntry::fail("superspace.tower.routes", e.to_string(), None),
    });
    out.extend(nonexact_two_cocycles(s));
    out
}

/// `solve_exactness` finds no primitive for the three 2-cocycles over the full degree-1 bases.
pub fn nonexact_two_cocycles(s: &Spacetimes) -> Vec<ReportEntry> {
    let cases = [
        ("c2_M", &s.iia10, &s.c2_m),
        ("c2_IIA", &s.mink9, &s.c2_iia),
        ("c2_IIB", &s.mink9, &s.c2_iib),
    ];
    cases
        .into_iter()
        .map(|(name, alg, c)| {
            let id = format!("superspace.nonexact.{name}");
            match solve_exactness(alg, c, DegreeCaps::default()) {
                Ok(None) => ReportEntry::pass(&id, format!("{name} has no primitive in degree 1")),
                Ok(Some(x)) => ReportEntry::fail(&id, format!("{name} is exact"), Some(alg.render_truncated(&x, 16))),
                Err(e) => ReportEntry::fail(&id, e.to_string(), None),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_signs() {
        let t = GeneratorTable::new(&[("a", Bidegree::even(1)), ("e", Bidegree::even(1)), ("b", Bidegree::odd(1))]).unwrap();
        let e = t.id("e").unwrap();
        let y = t.mul(&t.gen("a"), &t.gen("b"));
        let x = t.mul(&t.gen("e"), &y);
        let s = fiber_integrate(&t, e, &x);
        assert!(s.restriction.is_zero());
        assert_eq!(s.integral, -y.clone());
        assert_eq!(fiber_reconstruct(&t, e, &s), x);
        let x2 = t.mul(&y, &t.gen("e"));
        assert_eq!(fiber_reconstruct(&t, e, &fiber_integrate(&t, e, &x2)), x2);
    }
}
