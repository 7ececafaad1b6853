//! Regenerates the committed benchmark corpus: seeded synthetic graphs
//! spanning small-world, clustered power-law, and community structure,
//! from a hundred to ten thousand vertices.

use clap::Parser;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use triclub::graph::Graph;
use triclub::synthetic::{planted_partition, triad_attachment, watts_strogatz};

#[derive(Parser, Debug)]
#[command(name = "gen-corpus", about = "Write the synthetic benchmark corpus")]
struct Cli {
    /// Output directory for the edge-list files.
    #[arg(long, default_value = "data/corpus")]
    out: PathBuf,
}

fn write_graph(dir: &PathBuf, name: &str, g: &Graph) -> std::io::Result<()> {
    let path = dir.join(format!("{name}.txt"));
    let mut w = BufWriter::new(File::create(&path)?);
    writeln!(w, "% {name} n={} m={}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.sorted_edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    println!("{}: n={} m={}", path.display(), g.vertex_count(), g.edge_count());
    Ok(())
}

fn main() -> std::io::Result<()> {
    let cli = Cli::parse();
    std::fs::create_dir_all(&cli.out)?;
    let seed: u64 = std::env::var("TRICLUB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20240810);

    let graphs: Vec<(&str, Graph)> = vec![
        ("ws_100_6_02", watts_strogatz(100, 6, 0.2, seed + 1)),
        ("ws_200_8_01", watts_strogatz(200, 8, 0.1, seed + 2)),
        ("ws_400_8_01", watts_strogatz(400, 8, 0.1, seed + 3)),
        ("ws_1000_10_005", watts_strogatz(1000, 10, 0.05, seed + 4)),
        ("ws_5000_6_005", watts_strogatz(5000, 6, 0.05, seed + 5)),
        ("ws_10000_6_005", watts_strogatz(10000, 6, 0.05, seed + 6)),
        ("hk_100_3_06", triad_attachment(100, 3, 0.6, seed + 7)),
        ("hk_200_4_05", triad_attachment(200, 4, 0.5, seed + 8)),
        ("hk_400_4_04", triad_attachment(400, 4, 0.4, seed + 9)),
        ("hk_1000_5_03", triad_attachment(1000, 5, 0.3, seed + 10)),
        ("hk_5000_5_01", triad_attachment(5000, 5, 0.1, seed + 11)),
        ("pp_100_5_025_002", planted_partition(100, 5, 0.25, 0.02, seed + 12)),
        ("pp_120_4_03_002", planted_partition(120, 4, 0.3, 0.02, seed + 13)),
        ("pp_300_3_02_001", planted_partition(300, 3, 0.2, 0.01, seed + 14)),
        ("pp_600_6_02_001", planted_partition(600, 6, 0.2, 0.01, seed + 15)),
        ("pp_2000_8_015_0005", planted_partition(2000, 8, 0.15, 0.005, seed + 16)),
    ];
    for (name, g) in &graphs {
        write_graph(&cli.out, name, g)?;
    }
    Ok(())
}
