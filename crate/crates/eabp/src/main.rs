use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = eabp::cli::run(args);
    println!("{}", eabp::cli::render(&result));
    ExitCode::from(result.exit_code as u8)
}
