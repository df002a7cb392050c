//! Drive the command layer from code: a sweep over C writing JSON curves and
//! a summary, read back losslessly.

use lambrecon::cli::{read_curve_json, run, Command, Family, Format, RunConfig};

fn main() {
    let out = std::env::temp_dir().join("lambrecon-sweep-example");
    let cfg = RunConfig {
        command: Some(Command::Sweep),
        family: Some(Family::Well),
        c_list: Some(vec![0.0, 0.25, 0.5]),
        n: Some(401),
        format: Some(Format::Json),
        out_dir: Some(out.clone()),
        ..Default::default()
    };
    let outcome = run(&cfg);
    println!("{}\nexit status {}", outcome.message, outcome.status.code());
    for f in &outcome.files {
        println!("  {}", f.display());
    }
    let curve = read_curve_json(&outcome.files[1]).expect("just written");
    println!("C = {:?}: {} nodes, V(0) = {}", curve.meta.c, curve.data.x.len(), curve.data.v[200]);
}
