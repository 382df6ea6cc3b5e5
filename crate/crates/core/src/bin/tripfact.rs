use std::io::Write;

fn main() {
    let (code, text) = tripfact::cli::run(std::env::args_os());
    // clap usage errors are plain text; reports and errors are JSON.
    // A closed pipe is not an error worth reporting.
    let _ = if text.starts_with('{') || code == 0 {
        writeln!(std::io::stdout(), "{text}")
    } else {
        writeln!(std::io::stderr(), "{text}")
    };
    std::process::exit(code);
}
