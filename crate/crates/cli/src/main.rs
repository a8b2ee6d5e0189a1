fn main() {
    std::process::exit(seatplan_cli::run(std::env::args_os()));
}
