"""HTTP routes for the Graded Stillman Toolkit."""
