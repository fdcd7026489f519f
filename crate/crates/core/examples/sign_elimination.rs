// Sign-pattern elimination for the genus-one presentation and the
// level-0 analysis of the genus-two family.

use bridgecover::loelim::{eliminate, genus2_level0, orbit_reduce, SymmetryAction};
use bridgecover::presentations::genus_one_presentation;
use bridgecover::Result;

pub fn run() -> Result<()> {
    let p = genus_one_presentation(5)?;
    let rep = eliminate(&p, &p.env);
    print!("{}", rep.to_table());
    println!("eliminated {:?}", rep.eliminated());
    println!("survivors {:?}", rep.survivors());
    for o in orbit_reduce(&rep, SymmetryAction::default()) {
        println!("orbit {} <- {:?}", o.canonical, o.members);
    }

    let r = genus2_level0(1, 1, -1, 1)?;
    print!("{}", r.to_text());
    println!("{} of {} patterns still open", r.residual().len(), r.patterns.len());
    Ok(())
}

fn main() {
    run().expect("sign elimination example");
}
