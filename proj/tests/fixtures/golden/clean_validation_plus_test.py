from sklearn.datasets import make_classification
from sklearn.model_selection import train_test_split
from sklearn.neighbors import KNeighborsClassifier

X, y = make_classification(n_samples=600, n_features=25)
X_rest, X_test, y_rest, y_test = train_test_split(X, y)
X_train, X_val, y_train, y_val = train_test_split(X_rest, y_rest)
best = 0
for k in (1, 3, 5):
    knn = KNeighborsClassifier(n_neighbors=k)
    knn.fit(X_train, y_train)
    s = knn.score(X_val, y_val)
    if s > best:
        best = s
final = KNeighborsClassifier(n_neighbors=5)
final.fit(X_train, y_train)
final.score(X_test, y_test)
