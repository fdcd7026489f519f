// Continued fractions, mirrors and knot classes.

use bridgecover::twobridge::{cf_value, knot_name, mirror, same_knot, ContinuedFraction};
use bridgecover::Result;

pub fn run() -> Result<()> {
    let cf = ContinuedFraction::new(vec![-2, 2, -2, 2])?;
    let f = cf_value(&cf)?;
    println!("{:?} = {f}", cf.terms());
    println!("  det {}, class {}", f.determinant(), knot_name(&f).unwrap_or("unnamed"));

    let m = mirror(&cf);
    let g = cf_value(&m)?;
    println!("mirror {:?} = {g}", m.terms());
    println!("  same knot as the original: {}", same_knot(&f, &g)?);

    // p/q and p/q' name the same knot when q q' = ±1 mod p
    for terms in [vec![2, 2], vec![2, -2], vec![4, 2]] {
        let cf = ContinuedFraction::new(terms)?;
        let f = cf_value(&cf)?;
        println!("{:?} = {f} even form {} knot {}", cf.terms(), cf.is_even_form(), f.is_knot());
    }

    match ContinuedFraction::new(vec![2, 0, 2]) {
        Ok(_) => println!("zero term accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

fn main() {
    run().expect("fraction example");
}
