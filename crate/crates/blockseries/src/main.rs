fn main() {
    // Die quietly when a downstream pipe closes, like other line-oriented
    // tools, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(blockseries::cli::run());
}
