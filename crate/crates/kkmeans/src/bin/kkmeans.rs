use kkmeans::cli::{parse_args, run_main};
use kkmeans::Error;

fn main() {
    let spec = match parse_args(std::env::args_os().skip(1)) {
        Ok(spec) => spec,
        Err(Error::Help(text)) => {
            print!("{text}");
            return;
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    std::process::exit(run_main(&spec));
}
