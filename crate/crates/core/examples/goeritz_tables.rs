// Goeritz matrices of the block families against the closed-form tables.

use bridgecover::goeritz::{
    all_rows, build_a_star, build_l_star, goeritz_from_diagram, star_grid, table_formula, CheckerboardDiagram, Family,
    Resolution,
};
use bridgecover::Result;
use num_traits::Signed;

pub fn run() -> Result<()> {
    let trefoil = CheckerboardDiagram { white_region_count: 2, crossings: vec![(0, 1, -1); 3] };
    let g = goeritz_from_diagram(&trefoil)?;
    println!("trefoil Goeritz matrix:\n{}det {}", g.entries, g.det());

    let a = build_a_star(1, 1, 2)?;
    println!("A(1,1,2; ***) is {}x{}, |det| {}", a.entries.rows(), a.entries.cols(), a.det().abs());
    println!("  table value {}", table_formula(Family::A, Resolution::STAR, &[1, 1, 2])?);
    let l = build_l_star(1, 1, 1, 2)?;
    println!("L(1,1,1,2; ***) |det| {}", l.det().abs());

    let r: Resolution = "0∞*".parse()?;
    println!("A(2,1,3; {}) = {}", r.glyphs(), table_formula(Family::A, r, &[2, 1, 3])?);

    for row in all_rows().iter().take(5) {
        println!("{}: {}", row.resolution.glyphs(), row.text);
    }

    let cells = star_grid(1, 2, true)?;
    let agree = cells.iter().filter(|c| c.agree()).count();
    println!("grid 1..2: {agree}/{} cells agree", cells.len());
    Ok(())
}

fn main() {
    run().expect("goeritz example");
}
