# Shared exact arithmetic, linear algebra, schemas and configuration
