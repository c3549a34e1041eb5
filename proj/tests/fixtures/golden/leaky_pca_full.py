from sklearn.datasets import load_breast_cancer
from sklearn.decomposition import PCA
from sklearn.model_selection import train_test_split
from sklearn.svm import LinearSVC

X, y = load_breast_cancer(return_X_y=True)
pca = PCA(n_components=5)
X_red = pca.fit_transform(X)
X_train, X_test, y_train, y_test = train_test_split(X_red, y)
svm = LinearSVC()
svm.fit(X_train, y_train)
svm.score(X_test, y_test)
