use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use decinterval::cli::{run, Request};

fn main() -> ExitCode {
    let request = match Request::try_parse() {
        Ok(request) => request,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(&request, &mut stdin.lock(), &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
