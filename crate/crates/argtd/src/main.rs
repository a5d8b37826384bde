use std::io::Write;
use std::process::ExitCode;

use argtd::cli;

fn main() -> ExitCode {
    let config = match cli::parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            if e.help {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = cli::run(&config, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
