# Direct-sum decomposition into coprimary components
