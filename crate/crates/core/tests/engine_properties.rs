mod properties;

use properties::LAWS;

fn law(name: &str) {
    let (_, f, cases) = LAWS.iter().find(|(n, ..)| *n == name).unwrap();
    f(*cases).unwrap_or_else(|e| panic!("{name}: {e}"));
}

#[test]
fn associativity() {
    law("associativity");
}

#[test]
fn graded_commutativity() {
    law("graded commutativity");
}

#[test]
fn leibniz_and_square_zero_for_d() {
    law("Leibniz and d^2 = 0 for d");
}

#[test]
fn leibniz_for_s() {
    law("Leibniz for s");
}

#[test]
fn fiber_split_reconstructs() {
    law("fiber-split reconstruction");
}

#[test]
fn composites_of_valid_morphisms_are_valid() {
    law("morphism composition");
}

#[test]
fn monomial_order_is_canonical() {
    law("canonical monomial order");
}
