use std::fmt::Write;

use crate::algebra::{DgaMorphism, Element, FreeDga, GeneratorTable};

/// A block name derived from an algebra label: `cyc(lS4)` becomes `cyc_lS4`.
pub fn fda_name(label: &str) -> String {
    let mut s = String::new();
    for c in label.chars() {
        let c = if c.is_ascii_alphanumeric() { c } else { '_' };
        if !(c == '_' && (s.is_empty() || s.ends_with('_'))) {
            s.push(c);
        }
    }
    while s.ends_with('_') {
        s.pop();
    }
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) || super::parser::is_reserved(&s) {
        s.insert_str(0, "a_");
    }
    s
}

pub fn serialize_algebra(name: &str, a: &FreeDga) -> String {
    let mut out = format!("algebra {name} {{\n");
    for g in a.generators() {
        let _ = writeln!(out, "  gen {} : {};", g.name, g.bidegree);
    }
    for g in a.generators() {
        let _ = writeln!(out, "  d {} = {};", g.name, a.render(a.differential(g.id)));
    }
    out.push_str("}\n");
    out
}

pub fn serialize_element(name: &str, algebra: &str, table: &GeneratorTable, x: &Element, cocycle: bool) -> String {
    let kw = if cocycle { "cocycle" } else { "element" };
    format!("{kw} {name} in {algebra} = {};\n", table.render(x))
}

pub fn serialize_morphism(name: &str, source: &str, target: &str, m: &DgaMorphism) -> String {
    let kw = if m.curved { "curved morphism" } else { "morphism" };
    let mut out = format!("{kw} {name} : {source} -> {target} {{\n");
    for g in m.source.generators() {
        let _ = writeln!(out, "  {} = {};", g.name, m.target.render(&m.images[g.id]));
    }
    out.push_str("}\n");
    out
}
