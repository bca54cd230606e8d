# Exact polynomial algebra
