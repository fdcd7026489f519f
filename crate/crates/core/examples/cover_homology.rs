// `|H1|` of cyclic branched covers: the Alexander oracle next to the
// Smith normal form of a cyclic presentation.

use std::collections::BTreeMap;

use bridgecover::linalg::smith_normal_form;
use bridgecover::presentations::mv_presentation;
use bridgecover::twobridge::{alexander, determinant, h1_cyclic_cover_order, seifert_matrix, EvenExpansion};
use bridgecover::Result;

pub fn run() -> Result<()> {
    let e = EvenExpansion::genus_two(1, 1, 1, 1)?;
    println!("Seifert matrix of {:?}:\n{}", e.pairs(), seifert_matrix(&e));
    println!("Alexander polynomial {:?}", alexander(&e).coeffs());
    println!("det {}", determinant(&e));

    for n in 2..=5 {
        println!("n = {n}: |H1| = {}", h1_cyclic_cover_order(&e, n)?);
    }

    let mut rows = BTreeMap::new();
    for (q, s, t, l) in [(1, 1, 1, 1), (1, 2, 1, 1), (2, 1, 1, 2), (-1, 1, -1, 1)] {
        let p = mv_presentation(q, s, t, l, 3)?;
        let snf = smith_normal_form(&p.abelianization_matrix(&[])?);
        let oracle = h1_cyclic_cover_order(&EvenExpansion::genus_two(q, s, t, l)?, 3)?;
        rows.insert((q, s, t, l), (snf.diagonal.clone(), snf.cokernel_order(), oracle));
    }
    for ((q, s, t, l), (diag, snf, oracle)) in rows {
        let d: Vec<String> = diag.iter().map(|x| x.to_string()).collect();
        println!("[{q},{s},{t},{l}] n=3: diag [{}] snf {snf} oracle {oracle}", d.join(" "));
    }
    Ok(())
}

fn main() {
    run().expect("cover homology example");
}
