//! Full pipeline on a permutation module, rendered as a JSON report.

use quadmod::cli::{run, Format, RunConfig, SpecSource, Stage};
use quadmod::quad::parse_cycles;

fn main() -> quadmod::Result<()> {
    let d = 3;
    let source = SpecSource::Perm {
        d,
        sigma: parse_cycles(d, "(123)")?,
        tau: parse_cycles(d, "(132)")?,
    };
    let config = RunConfig {
        stage: Stage::Full,
        label: "perm:3,(123),(132)".into(),
        source,
        depth: 3,
        format: Format::Json,
        output: None,
        seed: None,
    };
    let report = run(&config)?;
    println!("{}", report.render(Format::Json));
    std::process::exit(report.exit_code());
}
