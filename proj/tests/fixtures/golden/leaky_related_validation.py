import pandas as pd
from sklearn.linear_model import SGDClassifier

train = pd.read_csv("train.csv")
holdout = pd.read_csv("holdout.csv")
y_train = train["y"]
X_train = train.drop("y", axis=1)
y_hold = holdout["y"]
X_hold = holdout.drop("y", axis=1)
clf = SGDClassifier()
clf.fit(X_train, y_train)
clf.score(X_hold, y_hold)
X_hold_copy = X_hold.copy()
clf.score(X_hold_copy, y_hold)
