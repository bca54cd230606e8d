# Singular point search and classification
