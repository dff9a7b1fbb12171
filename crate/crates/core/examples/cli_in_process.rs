//! Drives the command-line front end from code, capturing its output.

use kbonacci::cli::run;

fn main() {
    for args in [
        "term --k 3 --j 6 --method qpow",
        "seq --k 2 --from -6 --to 6 --format csv",
        "matrix --family Q --k 2 --r 2",
        "term --k 1 --j 5",
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kbonacci").chain(args.split_whitespace());
        let code = run(argv, &mut out, &mut err);
        println!("$ kbonacci {args}   (exit {code})");
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
    }
}
