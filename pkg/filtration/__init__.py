# Coprimary filtration engine and certificates
