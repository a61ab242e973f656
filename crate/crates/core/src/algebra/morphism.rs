use std::collections::HashMap;
use std::sync::Arc;

use super::dga::FreeDga;
use super::element::{Bidegree, Element, Monomial};
use super::table::GeneratorTable;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Substitute `images[g]` for every generator `g` of `x`, multiplying in `target`.
pub fn substitute(target: &GeneratorTable, images: &[Element], x: &Element) -> Element {
    let mut pow_cache: HashMap<(u32, u32), Element> = HashMap::new();
    let mut out = Element::zero();
    'terms: for (m, c) in x.terms() {
        let mut acc = Element::scalar(c.clone());
        for &(id, e) in m.factors() {
            let img = &images[id as usize];
            if img.is_zero() {
                continue 'terms;
            }
            let p = if e == 1 {
                img.clone()
            } else {
                pow_cache.entry((id, e)).or_insert_with(|| target.pow(img, e)).clone()
            };
            acc = target.mul(&acc, &p);
            if acc.is_zero() {
                continue 'terms;
            }
        }
        for (mm, cc) in acc.into_terms() {
            out.add_term(mm, cc);
        }
    }
    out
}

/// Why a morphism failed validation.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismDefect {
    pub generator: String,
    pub reason: String,
    /// `image(d g) - d(image g)`, or the offending image.
    pub difference: Element,
}

/// A (possibly curved) map of CE algebras, given on the generators of `source`.
#[derive(Clone, Debug)]
pub struct DgaMorphism {
    pub source: Arc<FreeDga>,
    pub target: Arc<FreeDga>,
    pub images: Vec<Element>,
    pub curved: bool,
}

impl PartialEq for DgaMorphism {
    fn eq(&self, o: &Self) -> bool {
        *self.source == *o.source && *self.target == *o.target && self.images == o.images
    }
}

impl DgaMorphism {
    pub fn new(source: Arc<FreeDga>, target: Arc<FreeDga>, images: Vec<Element>, curved: bool) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::TableMismatch(format!(
                "{} images for {} source generators",
                images.len(),
                source.len()
            )));
        }
        for x in &images {
            target.check_ids(x)?;
        }
        Ok(DgaMorphism { source, target, images, curved })
    }

    pub fn identity(a: Arc<FreeDga>) -> Self {
        let images = (0..a.len()).map(Element::generator).collect();
        DgaMorphism { source: a.clone(), target: a, images, curved: false }
    }

    /// Generators listed in `overrides` go to the given elements, every other generator
    /// to the target generator of the same name.
    pub fn by_name(source: Arc<FreeDga>, target: Arc<FreeDga>, overrides: Vec<(&str, Element)>) -> Result<Self> {
        let mut images: Vec<Option<Element>> = vec![None; source.len()];
        for (name, x) in overrides {
            let id = source.try_id(name)?;
            images[id] = Some(x);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(id, x)| match x {
                Some(x) => Ok(x),
                None => target.try_id(source.name(id)).map(Element::generator),
            })
            .collect::<Result<Vec<_>>>()?;
        let curved = images.iter().any(|x| !x.unit_coeff().is_zero());
        DgaMorphism::new(source, target, images, curved)
    }

    pub fn image(&self, name: &str) -> Result<&Element> {
        Ok(&self.images[self.source.try_id(name)?])
    }

    pub fn apply(&self, x: &Element) -> Element {
        substitute(self.target.table(), &self.images, x)
    }

    /// Image homogeneity, the curved rule, and `image(d g) = d(image g)` on every generator.
    pub fn validate(&self) -> std::result::Result<(), MorphismDefect> {
        let unit = Monomial::unit();
        for id in 0..self.source.len() {
            let name = self.source.name(id).to_string();
            let img = &self.images[id];
            let b = self.source.bidegree(id);
            if !self.target.is_homogeneous_of(img, b) {
                return Err(MorphismDefect { generator: name, reason: format!("image not homogeneous of bidegree {b}"), difference: img.clone() });
            }
            let has_unit = !img.coeff(&unit).is_zero();
            if has_unit && (!self.curved || b != Bidegree::unit()) {
                return Err(MorphismDefect {
                    generator: name,
                    reason: "unit term without the curved flag".into(),
                    difference: img.clone(),
                });
            }
        }
        for id in 0..self.source.len() {
            let lhs = self.apply(self.source.differential(id));
            let rhs = self.target.d(&self.images[id]);
            if lhs != rhs {
                return Err(MorphismDefect {
                    generator: self.source.name(id).to_string(),
                    reason: "does not commute with d".into(),
                    difference: &lhs - &rhs,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `g ∘ f`: apply `f` first, then `g`. Requires `f.target = g.source`.
    pub fn compose(g: &DgaMorphism, f: &DgaMorphism) -> Result<DgaMorphism> {
        if !Arc::ptr_eq(&f.target, &g.source) && *f.target != *g.source {
            return Err(Error::TableMismatch(format!(
                "cannot compose: {} vs {}",
                f.target.label(),
                g.source.label()
            )));
        }
        let images = f.images.iter().map(|x| g.apply(x)).collect();
        Ok(DgaMorphism { source: f.source.clone(), target: g.target.clone(), images, curved: f.curved || g.curved })
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.images.iter().enumerate().all(|(i, x)| *x == Element::generator(i))
    }

    /// Renders the generator map as `name |-> image` lines.
    pub fn describe(&self) -> Vec<String> {
        (0..self.source.len())
            .map(|i| format!("{} |-> {}", self.source.name(i), self.target.render(&self.images[i])))
            .collect()
    }
}

/// Pushout of the free extension `extension ⊇ base` along `f: base → T`: adjoins the new
/// generators of `extension` to `T` with their differentials transported along `f`.
pub fn pushout_along(extension: &FreeDga, base: &FreeDga, f: &DgaMorphism, label: &str) -> Result<FreeDga> {
    if !extension.extends(base) {
        return Err(Error::NotAnExtension(format!("{} does not extend {}", extension.label(), base.label())));
    }
    if *f.source != *base {
        return Err(Error::TableMismatch("pushout map does not start at the base".into()));
    }
    let t = f.target.clone();
    let new_ids: Vec<usize> = (base.len()..extension.len()).collect();
    let decls: Vec<(String, Bidegree)> =
        new_ids.iter().map(|&i| (extension.name(i).to_string(), extension.bidegree(i))).collect();
    t.adjoin(label, &decls, |table| {
        let mut images = f.images.clone();
        for k in 0..new_ids.len() {
            images.push(Element::generator(t.len() + k));
        }
        Ok(new_ids.iter().map(|&i| substitute(table, &images, extension.differential(i))).collect())
    })
}

/// Checks that `a` and `b` are the same algebra up to renaming generators (`renames` lists
/// `a`-name → `b`-name pairs, unlisted names map to themselves). Returns both directions.
pub fn renaming_isomorphism(a: &Arc<FreeDga>, b: &Arc<FreeDga>, renames: &[(&str, &str)]) -> Result<(DgaMorphism, DgaMorphism)> {
    if a.len() != b.len() {
        return Err(Error::InvalidMorphism(format!("{} vs {} generators", a.len(), b.len())));
    }
    let fwd: Vec<(&str, Element)> = renames.iter().map(|(x, y)| Ok((*x, Element::generator(b.try_id(y)?)))).collect::<Result<_>>()?;
    let bwd: Vec<(&str, Element)> = renames.iter().map(|(x, y)| Ok((*y, Element::generator(a.try_id(x)?)))).collect::<Result<_>>()?;
    let f = DgaMorphism::by_name(a.clone(), b.clone(), fwd)?;
    let g = DgaMorphism::by_name(b.clone(), a.clone(), bwd)?;
    for m in [&f, &g] {
        if let Err(e) = m.validate() {
            return Err(Error::InvalidMorphism(format!("renaming fails on {}: {}", e.generator, e.reason)));
        }
    }
    if !DgaMorphism::compose(&g, &f)?.is_identity() || !DgaMorphism::compose(&f, &g)?.is_identity() {
        return Err(Error::InvalidMorphism("renaming is not a bijection on generators".into()));
    }
    Ok((f, g))
}

/// `Σ_{k ≤ cap} x^k / k!` truncated by total degree (x of positive degree).
pub fn exp_truncated(table: &GeneratorTable, x: &Element, max_degree: i32) -> Element {
    let mut out = Element::one();
    let mut p = Element::one();
    let mut k = 1u32;
    loop {
        p = table.mul(&p, x).scale(&GaussianRational::ratio(1, k as i64));
        let p_trunc = p.filter(|m| table.monomial_bidegree(m).n <= max_degree);
        if p_trunc.is_zero() {
            break;
        }
        out = out + p_trunc.clone();
        p = p_trunc;
        k += 1;
    }
    out
}
