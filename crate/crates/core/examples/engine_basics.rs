// Declaring a free bigraded DGA by hand, multiplying, differentiating, and checking exactness.

use superfda::algebra::{solve_exactness, Bidegree, DegreeCaps, Element, FreeDga, GeneratorTable};

pub struct EngineTour {
    pub square_of_odd: String,
    pub d_of_product: String,
    pub primitive: Option<String>,
    pub closed_but_not_exact: bool,
}

pub fn run_example() -> EngineTour {
    // x and y of degree 1 anticommute; t of degree 1 and odd parity commutes with itself
    let table = GeneratorTable::new(&[("x", Bidegree::even(1)), ("y", Bidegree::even(1)), ("t", Bidegree::odd(1)), ("z", Bidegree::even(1))]).unwrap();
    let (x, y, t) = (table.gen("x"), table.gen("y"), table.gen("t"));
    let d = vec![Element::zero(), Element::zero(), Element::zero(), table.mul(&x, &y)];
    let alg = FreeDga::declare("toy", table, d).unwrap();

    let tt = alg.mul(&t, &t);
    let zt = alg.mul(&alg.gen("z"), &t);
    let xy = alg.mul(&x, &y);
    let primitive = solve_exactness(&alg, &xy, DegreeCaps::default()).unwrap();
    let closed_but_not_exact = alg.is_closed(&tt) && solve_exactness(&alg, &tt, DegreeCaps::default()).unwrap().is_none();
    EngineTour {
        square_of_odd: alg.render(&tt),
        d_of_product: alg.render(&alg.d(&zt)),
        primitive: primitive.map(|p| alg.render(&p)),
        closed_but_not_exact,
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("t*t = {}", r.square_of_odd);
    println!("d(z t) = {}", r.d_of_product);
    println!("x y = d({})", r.primitive.as_deref().unwrap_or("none"));
    println!("t^2 closed and not exact: {}", r.closed_but_not_exact);
}
