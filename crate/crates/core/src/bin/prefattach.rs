fn main() {
    std::process::exit(prefattach::experiment::run_cli(std::env::args_os()));
}
