use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = quivercount_cli::run(std::env::args());
    if code == 0 {
        println!("{output}");
    } else {
        eprintln!("{output}");
    }
    ExitCode::from(code as u8)
}
