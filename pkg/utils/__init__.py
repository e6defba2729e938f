# Shared utilities: configuration-driven logging and the exception hierarchy
