use std::process::ExitCode;

fn main() -> ExitCode {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    ffdensity::cli::main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
