// Skein certificates: generate, inspect, serialize, verify and tamper.

use bridgecover::qacert::{
    deserialize, generate_a_cert, generate_l_cert, serialize, single_field_mutations, verify, NodeKind,
};
use bridgecover::Result;

pub fn run() -> Result<()> {
    let c = generate_a_cert(1, 2, 1)?;
    println!("{} claim {}", c.root.link, c.claim.label());
    println!("  {} nodes, depth {}, axioms {:?}", c.size(), c.root.depth(), c.base_axioms());
    for (path, node) in c.root.walk().into_iter().take(6) {
        let extra = match &node.kind {
            NodeKind::Identify { citation, .. } => format!(" [{citation}]"),
            NodeKind::Base { axiom } => format!(" [{axiom}]"),
            _ => String::new(),
        };
        println!("  {path}: {} det {} {}{extra}", node.link, node.det, node.kind.label());
    }
    println!("  verify: {}", verify(&c));

    let json = serialize(&c);
    let back = deserialize(json.as_bytes())?;
    println!("round trip equal: {}", back == c);

    for (q, s, t, l) in [(1, 1, 1, 1), (2, 1, 3, 1), (-1, 2, -1, 1), (1, -2, -1, -1)] {
        let c = generate_l_cert(q, s, t, l)?;
        println!("L({q},{s},{t},{l}): {} nodes, {} {}", c.size(), c.claim.label(), verify(&c));
    }

    let muts = single_field_mutations(&c);
    let caught = muts.iter().filter(|(_, m)| !verify(m).is_accept()).count();
    println!("{caught}/{} single-field mutations rejected", muts.len());
    if let Some((what, m)) = muts.first() {
        println!("  {what}: {}", verify(m));
    }
    Ok(())
}

fn main() {
    run().expect("certificate example");
}
