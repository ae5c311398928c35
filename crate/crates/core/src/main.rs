use std::process::ExitCode;

fn main() -> ExitCode {
    interleaver_spread::cli::run(std::env::args_os())
}
