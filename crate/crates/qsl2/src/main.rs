//! Binary entry point; all logic lives in [`qsl2::cli`].

fn main() {
    std::process::exit(qsl2::cli::run());
}
