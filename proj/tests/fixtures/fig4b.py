from sklearn.datasets import make_classification
from sklearn.feature_selection import SelectPercentile
from sklearn.linear_model import LinearRegression, Ridge
from sklearn.model_selection import train_test_split

X_full, y_full = make_classification(n_samples=400, n_features=40)
X_rest, X_test_new, y_rest, y_test_new = train_test_split(X_full, y_full, random_state=1)
X_train, X_test, y_train, y_test = train_test_split(X_rest, y_rest, random_state=1)
select = SelectPercentile(percentile=50)
select.fit(X_train, y_train)
X = select.transform(X_train)
lr = LinearRegression()
lr.fit(X_train, y_train)
s1 = lr.score(X_test, y_test)
ridge = Ridge()
ridge.fit(X, y_train)
s2 = ridge.score(X_test, y_test)
best = lr if s1 > s2 else ridge
best.score(X_test_new, y_test_new)
