"""Anti-Cheeger cut and maxcut via continuous iterative algorithms."""
