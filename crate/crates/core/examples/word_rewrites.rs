// Parametric words: reduction, peeling, substitution and the rewritten
// relators of the genus-two presentation.

use std::collections::BTreeMap;

use bridgecover::presentations::{mv_presentation_symbolic, verify_product_identity, verify_rewrites};
use bridgecover::words::{cyclic_reduce, exponent_sums, instantiate, peel_at, reduce, ParamEnv, ParamWord, Side};
use bridgecover::Result;

pub fn run() -> Result<()> {
    let env = ParamEnv::new().with("q", 1).with("s", 1);
    let w = ParamWord::parse("x^(q) y y^(-1) x^(-q+1) (z x)^(s)")?;
    println!("{w}\n  reduces to {}", reduce(&w, &env));
    let c = ParamWord::parse("x (y z^(q))^(s) x^(-1)")?;
    println!("{c}\n  cyclically {}", cyclic_reduce(&c, &env));
    println!("  peeled {}", peel_at(&c, 1, Side::Right, &env)?);
    for (g, e) in exponent_sums(&c) {
        println!("  sum {g}: {e}");
    }
    let vals: BTreeMap<String, i64> = [("q".to_string(), 2), ("s".to_string(), 2)].into();
    println!("  at q=s=2: {:?}", instantiate(&c, &vals)?.syllables());

    let p = mv_presentation_symbolic(3)?;
    print!("{p}");

    for v in verify_rewrites(1, 2, 1, 2)? {
        println!("{}: {}", v.identity, v.verdict);
    }
    let pv = verify_product_identity(1, 1, 1, 1)?;
    println!("r3 r2 r1 vs zyx: abelian {} row span {} {}", pv.abelian_pass, pv.in_row_span, pv.verdict);
    Ok(())
}

fn main() {
    run().expect("word example");
}
