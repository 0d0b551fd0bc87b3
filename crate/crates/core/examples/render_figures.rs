//! Tours, partition and arborescence pictures for both bundled pairs.
//!
//!     cargo run --example render_figures -- [out_dir]

use std::fs;
use std::path::PathBuf;

use twoopt_lab::fixtures::FixtureName;
use twoopt_lab::harness::{render_svg, run_pipeline_artifacts, ExperimentConfig, Stage};

fn main() -> twoopt_lab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    fs::create_dir_all(&dir)?;
    for name in [FixtureName::Crossings12, FixtureName::CrossingFree42] {
        let art = run_pipeline_artifacts(&ExperimentConfig::fixture(name))?;
        for (stage, suffix) in [
            (Stage::Tours, "tours"),
            (Stage::Partition, "partition"),
            (Stage::Arborescence, "arborescence"),
        ] {
            let path = dir.join(format!("{name}-{suffix}.svg"));
            fs::write(&path, render_svg(stage, &art))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
