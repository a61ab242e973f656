// Running a slice of the verification suite as the CLI does, with a JSON report.

use superfda::suite::{run, Flags};

pub struct SuiteTour {
    pub ids: Vec<String>,
    pub all_pass: bool,
    pub json: String,
}

pub fn run_example() -> SuiteTour {
    let flags = Flags { threads: Some(2), ..Flags::default() };
    let report = run("superspace.", &flags).unwrap();
    SuiteTour { ids: report.entries.iter().map(|e| e.id.clone()).collect(), all_pass: report.all_pass(), json: report.without_timing().to_json() }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("{}", r.json);
    println!("{} entries, all pass: {}", r.ids.len(), r.all_pass);
}
