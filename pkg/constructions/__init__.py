# Hypersurface families
