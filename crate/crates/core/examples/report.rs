//! Runs a CLI command in-process and prints the JSON report.

fn main() {
    let code = quadalg::cli::run(["quadalg", "crosscheck", "euler", "--samples", "200", "--seed", "3", "--format", "json"]);
    eprintln!("exit code {code}");
}
