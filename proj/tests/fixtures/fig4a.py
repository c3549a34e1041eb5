from sklearn.datasets import make_classification
from sklearn.feature_selection import SelectPercentile
from sklearn.linear_model import LinearRegression, Ridge
from sklearn.model_selection import train_test_split

X, y = make_classification(n_samples=400, n_features=40)
select = SelectPercentile(percentile=50)
select.fit(X, y)
X = select.transform(X)

X_train, X_test, y_train, y_test = train_test_split(X, y, random_state=1)
lr = LinearRegression()
lr.fit(X_train, y_train)
lr.score(X_test, y_test)
ridge = Ridge()
ridge.fit(X, y)
ridge.score(X_test, y_test)
