# Seeded search experiments checked against exhaustive landscapes
