import numpy as np
from sklearn.datasets import make_regression
from sklearn.linear_model import Ridge
from sklearn.model_selection import train_test_split

X, y = make_regression(n_samples=300, n_features=12)
m = X.mean()
s = X.std()
X_norm = (X - m) / s
X_train, X_test, y_train, y_test = train_test_split(X_norm, y)
model = Ridge()
model.fit(X_train, y_train)
model.score(X_test, y_test)
