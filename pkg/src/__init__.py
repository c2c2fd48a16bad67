# Bicirculant Atlas - Source Package
