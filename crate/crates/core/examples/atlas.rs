//! Prints the splitted-image atlas of a named graph.
//!
//! `cargo run --release -p hcolor-core --example atlas -- s12 [k]`

use std::time::Instant;

use hcolor::images::enumerate_splitted_images;
use hcolor::named;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "p".into());
    let param = args.next().map(|p| p.parse()).transpose()?;
    let guest = named::by_name(&name, param)?.graph;
    let start = Instant::now();
    let atlas = enumerate_splitted_images(&guest, None)?;
    println!(
        "{name}: {} images, complete {}, {} partitions, {} nodes, {:.2?}",
        atlas.entries.len(),
        atlas.complete,
        atlas.partitions,
        atlas.nodes,
        start.elapsed()
    );
    for e in &atlas.entries {
        let g = &e.image.graph;
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        println!(
            "  n={} m={} leaves={} multiplicity={} degrees={:?} {}",
            g.vertex_count(),
            g.edge_count(),
            e.image.unused_leaf_count(),
            e.multiplicity,
            degrees,
            &e.form.digest()[..12]
        );
    }
    Ok(())
}
