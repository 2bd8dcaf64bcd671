"""imcdse commands - CLI subcommands."""
