import pandas as pd
from sklearn.utils import resample
from sklearn.model_selection import train_test_split
from sklearn.ensemble import AdaBoostClassifier

df = pd.read_csv("events.csv")
boosted = resample(df, n_samples=5000)
y = boosted["label"]
X = boosted.drop("label", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
ada = AdaBoostClassifier()
ada.fit(X_train, y_train)
ada.predict(X_test)
