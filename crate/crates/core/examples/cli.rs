// Drive the command-line front end in-process.

use disknorm::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let commands: [&[&str]; 3] = [
        &[
            "norm",
            "--space",
            "bergman",
            "--p",
            "0.25",
            "--expr",
            "(1+z)^(4/p)",
        ],
        &[
            "verify",
            "--case",
            "hp-counterexample",
            "--p",
            "0.5",
            "--json",
        ],
        &["membership", "--alpha", "4", "--p", "0.5", "--rule-only"],
    ];
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    for args in commands {
        println!("$ disknorm {}", args.join(" "));
        let code = run(
            std::iter::once("disknorm").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        println!("(exit {code})");
        if code != 0 {
            return Err(format!("exit code {code}").into());
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
