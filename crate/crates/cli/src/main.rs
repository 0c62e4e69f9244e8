use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = grt_cli::run(std::env::args_os());
    if result.status == 0 {
        print!("{}", result.stdout());
    } else if result.json {
        print!("{}", result.stdout());
        eprint!("{}", result.rendering);
    } else {
        eprint!("{}", result.rendering);
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(result.status as u8)
}
