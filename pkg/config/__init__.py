# Runtime configuration package
