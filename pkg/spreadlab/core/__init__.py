# Core functionality package: configuration, logging and errors
