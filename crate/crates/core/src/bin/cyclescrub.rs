fn main() { std::process::exit(cyclescrub::cli::run_from_env()); }
