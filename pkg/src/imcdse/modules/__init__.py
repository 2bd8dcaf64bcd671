"""imcdse business logic modules."""
