# End-to-end tests for imcdse CLI workflows
