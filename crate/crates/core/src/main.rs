use std::io::Write;

fn main() {
    let (code, output) = splinetop::cli::run_from_args(std::env::args_os());
    if code == 0 {
        print!("{output}");
    } else {
        let _ = write!(std::io::stderr(), "{output}");
    }
    std::process::exit(code);
}
